#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crossedk/cli.hpp"

namespace py = pybind11;
using namespace crossedk;

namespace {

// Integers cross the boundary as Python ints, via their decimal form.
py::int_ to_py(const Integer& v) { return py::int_(py::str(v.str())); }

Integer from_py(const py::handle& h) { return Integer(py::str(h).cast<std::string>()); }

py::list to_py(const IntMatrix& m) {
  py::list rows;
  for (int r = 0; r < m.rows(); ++r) {
    py::list row;
    for (int c = 0; c < m.cols(); ++c) row.append(to_py(m(r, c)));
    rows.append(row);
  }
  return rows;
}

IntMatrix int_matrix(const py::sequence& rows) {
  const int nr = static_cast<int>(py::len(rows));
  const int nc = nr == 0 ? 0 : static_cast<int>(py::len(rows[0]));
  IntMatrix m(nr, nc);
  for (int r = 0; r < nr; ++r) {
    py::sequence row = rows[r];
    if (static_cast<int>(py::len(row)) != nc) throw InputError("ragged integer matrix");
    for (int c = 0; c < nc; ++c) m(r, c) = from_py(row[c]);
  }
  return m;
}

// Groups are (rank, [torsion...]); a K-pair is (K_0, K_1).
py::tuple to_py(const AbelianGroup& g) {
  py::list t;
  for (const auto& x : g.torsion()) t.append(to_py(x));
  return py::make_tuple(g.rank(), t);
}

AbelianGroup group(const py::object& o) {
  if (py::isinstance<py::int_>(o)) return AbelianGroup::free(o.cast<int>());
  auto t = o.cast<py::tuple>();
  const int rank = t[0].cast<int>();
  std::vector<Integer> orders;
  for (auto x : t[1].cast<py::sequence>()) orders.push_back(from_py(x));
  // Relations diag(orders) plus free generators; present() also canonicalizes
  // torsion that is not a divisibility chain, such as (2, 3).
  const int tors = static_cast<int>(orders.size());
  IntMatrix d = IntMatrix::zero(tors + rank, tors);
  for (int i = 0; i < tors; ++i) d(i, i) = orders[static_cast<std::size_t>(i)];
  return present(d).group;
}

py::tuple to_py(const KPair& p) { return py::make_tuple(to_py(p.k0), to_py(p.k1)); }

KPair kpair(const py::object& o) {
  auto t = o.cast<py::tuple>();
  return {group(t[0]), py::len(t) > 1 ? group(t[1]) : AbelianGroup::zero()};
}

py::dict to_py(const RecursionLedger& l) {
  py::list steps;
  for (const auto& s : l.steps) {
    py::dict d;
    d["k"] = s.k;
    d["sub"] = s.sub ? py::object(to_py(*s.sub)) : py::none();
    d["quotient"] = to_py(s.quot);
    d["middle"] = s.solution.middle ? py::object(to_py(*s.solution.middle)) : py::none();
    d["status"] = to_string(s.solution.status);
    d["reason"] = s.solution.reason;
    py::list cands;
    for (const auto& c : s.solution.candidates) cands.append(to_py(c));
    d["candidates"] = cands;
    if (s.concrete) d["exact"] = all_exact(s.concrete->junctions);
    steps.append(d);
  }
  py::dict out;
  out["n"] = l.n;
  out["a0"] = to_py(l.a0);
  out["steps"] = steps;
  out["result"] = l.result() ? py::object(to_py(*l.result())) : py::none();
  out["oracle"] = l.oracle ? py::object(to_py(*l.oracle)) : py::none();
  return out;
}

ZnAction action(const std::vector<int>& blocks, const Matrix& unitary, const std::vector<int>& perm, int n,
                int xi_exponent, double tol, std::uint64_t seed) {
  return make_action(build_multimatrix(blocks, tol, seed), {unitary, perm}, n, xi_exponent);
}

ZnAction builtin(const std::string& name, std::optional<int> n, double tol, std::uint64_t seed) {
  auto b = cli::builtin_example(name, n);
  return make_action(build_multimatrix(b.blocks, tol, seed), b.spec, b.n);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "K-theory of crossed products of finite-dimensional C*-algebras by cyclic groups";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CheckFailure>(m, "CheckFailure", PyExc_RuntimeError);

  m.attr("DEFAULT_TOL") = kDefaultTol;
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  py::class_<FiniteAlgebra>(m, "Algebra")
      .def_property_readonly("dim", &FiniteAlgebra::dim)
      .def_property_readonly("ambient_dim", &FiniteAlgebra::ambient_dim)
      .def_property_readonly("unit", [](const FiniteAlgebra& a) { return a.unit(); })
      .def("basis", [](const FiniteAlgebra& a) { return a.space().basis(); })
      .def("block_dims", [](const FiniteAlgebra& a) { return a.wedderburn().dims; })
      .def("k0", [](const FiniteAlgebra& a) { return to_py(k0_of_algebra(a).k0); });

  m.def("multimatrix", &build_multimatrix, py::arg("blocks"), py::arg("tol") = kDefaultTol,
        py::arg("seed") = kDefaultSeed);

  py::class_<ZnAction>(m, "Action")
      .def_property_readonly("n", &ZnAction::order)
      .def_property_readonly("algebra", &ZnAction::algebra)
      .def_property_readonly("fixed_point_algebra", &ZnAction::fixed_point_algebra)
      .def("apply", &ZnAction::apply, py::arg("x"), py::arg("power") = 1)
      .def("project", &ZnAction::project, py::arg("k"), py::arg("x"))
      .def("eigenspace_dim", [](const ZnAction& a, long k) { return a.eigenspace(k).dim(); })
      .def("eigenspace", [](const ZnAction& a, long k) { return a.eigenspace(k).basis(); })
      .def("ideal_dim", [](const ZnAction& a, int k) { return a.ideal_I(k).dim(); });

  m.def("action", &action, py::arg("blocks"), py::arg("unitary"), py::arg("block_permutation"), py::arg("n"),
        py::arg("xi_exponent") = 1, py::arg("tol") = kDefaultTol, py::arg("seed") = kDefaultSeed,
        "alpha(x) = U pi(x) U* on the block-diagonal algebra with the given block sizes.");
  m.def("builtin", &builtin, py::arg("name"), py::arg("n") = py::none(), py::arg("tol") = kDefaultTol,
        py::arg("seed") = kDefaultSeed);
  m.def("builtin_names", &cli::builtin_names);

  m.def("theta", [](const ZnAction& a, const std::vector<Matrix>& coeffs) { return theta(a, {coeffs}); },
        py::arg("action"), py::arg("coeffs"));
  m.def("theta_inverse", [](const ZnAction& a, const Matrix& x) { return theta_inverse(a, x).coeffs; },
        py::arg("action"), py::arg("matrix"));
  m.def("theta_residuals", [](const ZnAction& a, std::uint64_t seed, int samples) {
        Rng rng(seed);
        auto r = theta_residuals(a, rng, samples);
        return py::dict(py::arg("homomorphism") = r.homomorphism, py::arg("star") = r.star,
                        py::arg("round_trip") = r.round_trip);
      }, py::arg("action"), py::arg("seed") = kDefaultSeed, py::arg("samples") = 4);
  m.def("image_algebra", &image_algebra);

  m.def("k_groups", [](const ZnAction& a) { return to_py(run_recursion_concrete(a)); }, py::arg("action"),
        "Concrete recursion; the ledger includes the directly computed oracle.");
  m.def("recurse_symbolic", [](int n, const py::object& a0, const std::vector<py::object>& quotients) {
        std::vector<KPair> qs;
        for (const auto& q : quotients) qs.push_back(kpair(q));
        return to_py(run_recursion_symbolic(n, kpair(a0), qs));
      }, py::arg("n"), py::arg("k_a0"), py::arg("quotients"),
      "Groups are given as an int rank or (rank, [torsion...]); K-pairs as (K_0, K_1).");

  m.def("smith_normal_form", [](const py::sequence& rows) {
        auto f = smith_normal_form(int_matrix(rows));
        return py::make_tuple(to_py(f.s), to_py(f.u), to_py(f.v));
      }, py::arg("matrix"), "Returns (S, U, V) with U M V = S.");

  m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<std::string> all{"crossedk"};
        all.insert(all.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : all) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      }, py::arg("args"));
}
