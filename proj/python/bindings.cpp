#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lacuna/bounds.hpp"
#include "lacuna/cyclotomic.hpp"
#include "lacuna/errors.hpp"
#include "lacuna/experiment.hpp"
#include "lacuna/io.hpp"
#include "lacuna/relation_lattice.hpp"
#include "lacuna/sparse_poly.hpp"

namespace py = pybind11;
using namespace lacuna;

namespace {

using Ints = std::vector<std::int64_t>;

py::object big_to_py(const BigInt& v)
{
  return py::reinterpret_steal<py::object>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

/// (numerator, denominator) as Python ints; the package wraps it in Fraction.
py::tuple rational_to_py(const Rational& q)
{
  return py::make_tuple(big_to_py(q.get_num()), big_to_py(q.get_den()));
}

SparsePoly make_poly(Ints exponents, std::int64_t degree_cap)
{
  return degree_cap > 0 ? SparsePoly(std::move(exponents), degree_cap)
                        : SparsePoly::from_exponents(std::move(exponents));
}

std::optional<std::int64_t> positive(std::int64_t v)
{
  return v > 0 ? std::optional<std::int64_t>(v) : std::nullopt;
}

std::string report_json(const std::vector<EstimateReport>& reports)
{
  std::ostringstream out;
  io::write_reports(out, reports, true);
  return out.str();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Native core of the lacuna package.";

  static py::exception<Error> base(m, "LacunaError");
  static py::exception<InvalidParameters> invalid(m, "InvalidParameters", base.ptr());
  static py::exception<ResourceLimit> resource(m, "ResourceLimit", base.ptr());
  static py::exception<ParseError> parse(m, "ParseError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const InvalidParameters& e) {
      py::set_error(invalid, e.what());
    } catch (const ResourceLimit& e) {
      py::set_error(resource, e.what());
    } catch (const ParseError& e) {
      py::set_error(parse, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def("sample_random",
        [](std::int64_t k, std::int64_t N, std::uint64_t seed, std::uint64_t index) {
          return sample_random(k, N, seed, index).exponents();
        },
        py::arg("k"), py::arg("N"), py::arg("seed"), py::arg("index") = 0);
  m.def("reduce_mod_cyclic",
        [](Ints exponents, std::int64_t n) {
          return reduce_mod_cyclic(SparsePoly::from_exponents(std::move(exponents)), n).counts;
        },
        py::arg("exponents"), py::arg("n"));
  m.def("atom_probability",
        [](Ints c, std::int64_t k, std::int64_t n, std::int64_t N) {
          return rational_to_py(atom_probability(c, k, n, N));
        },
        py::arg("c"), py::arg("k"), py::arg("n"), py::arg("N"));
  m.def("multinomial_weight",
        [](Ints c, std::int64_t k, std::int64_t n) {
          return rational_to_py(multinomial_weight(c, k, n));
        },
        py::arg("c"), py::arg("k"), py::arg("n"));

  m.def("cyclotomic_poly",
        [](std::int64_t n) {
          py::list out;
          for (const auto& c : cyclotomic_poly(n).coefficients())
            out.append(big_to_py(c));
          return out;
        },
        py::arg("n"));
  m.def("divides_phi_dense",
        [](Ints e, std::int64_t n) { return divides_phi_dense(SparsePoly::from_exponents(e), n); },
        py::arg("exponents"), py::arg("n"));
  m.def("divides_phi_structural",
        [](Ints e, std::int64_t n) {
          return divides_phi_structural(SparsePoly::from_exponents(e), n);
        },
        py::arg("exponents"), py::arg("n"));
  m.def("conway_jones_split",
        [](Ints e, std::int64_t n, std::int64_t b) {
          const auto s = conway_jones_split(SparsePoly::from_exponents(e), n, b);
          std::vector<bool> vanish;
          for (std::size_t i = 0; i < s.parts.size(); ++i)
            vanish.push_back(s.part_vanishes(i));
          return py::make_tuple(s.parts, vanish);
        },
        py::arg("exponents"), py::arg("n"), py::arg("b"));
  m.def("sweep_cap", &sweep_cap, py::arg("N"));
  m.def("find_cyclotomic_factors",
        [](Ints e, std::int64_t N, const std::string& mode, std::int64_t cap_override) {
          return find_cyclotomic_factors(make_poly(std::move(e), N), parse_sweep_mode(mode),
                                         positive(cap_override));
        },
        py::arg("exponents"), py::arg("N") = 0, py::arg("mode") = "full-sweep",
        py::arg("cap_override") = 0);

  m.def("build_basis_json",
        [](std::int64_t n) { return io::basis_to_json(build_basis(n)).dump(); }, py::arg("n"));
  m.def("enumerate_ball",
        [](std::int64_t n, double radius, Ints anchor, std::vector<std::pair<long, long>> center,
           double guard) {
          const auto basis = build_basis(n);
          if (anchor.empty())
            anchor.assign(static_cast<std::size_t>(n), 0);
          BallQuery q;
          q.n = n;
          q.radius = radius;
          if (center.empty())
            for (auto a : anchor)
              q.center.emplace_back(static_cast<long>(a));
          else
            for (const auto& [num, den] : center) {
              Rational v(num, den);
              v.canonicalize();
              q.center.push_back(v);
            }
          return enumerate_ball(basis, q, anchor, guard);
        },
        py::arg("n"), py::arg("radius"), py::arg("anchor") = Ints{},
        py::arg("center") = std::vector<std::pair<long, long>>{},
        py::arg("guard") = kBallEnumerationGuard);
  m.def("volume_count_bound",
        [](std::int64_t n, double radius) { return volume_count_bound(build_basis(n), radius); },
        py::arg("n"), py::arg("radius"));

  m.def("chernoff_binomial", &chernoff_binomial, py::arg("trials"), py::arg("p"),
        py::arg("delta"));
  m.def("fs_candidates", [](std::int64_t k) { return fs_candidates(k).members; }, py::arg("k"));
  m.def("eq3_lattice_bound", [](std::int64_t k, std::int64_t n) {
    return eq3_lattice_bound(k, n).value();
  }, py::arg("k"), py::arg("n"));
  m.def("small_n_exact",
        [](std::int64_t k, std::int64_t n, const std::string& convention) {
          require(convention == "paper-c" || convention == "exact-c-prime",
                  "convention must be paper-c or exact-c-prime");
          const auto v = small_n_exact(
              k, n, convention == "paper-c" ? Convention::paper_c : Convention::exact_c_prime);
          py::object exact = v.exact ? py::object(rational_to_py(*v.exact)) : py::none();
          return py::make_tuple(exact, v.asymptotic);
        },
        py::arg("k"), py::arg("n"), py::arg("convention") = "paper-c");
  m.def("total_bound_json",
        [](std::int64_t k) {
          std::ostringstream out;
          io::write_bounds(out, {total_bound(k)}, true);
          return out.str();
        },
        py::arg("k"));

  m.def("estimate_json",
        [](std::int64_t k, std::int64_t N, std::int64_t n, std::int64_t trials,
           std::uint64_t seed, const std::string& mode, unsigned workers) {
          const auto r = n > 0 ? estimate_phi_n(k, N, n, trials, seed, workers)
                               : estimate_any_cyclotomic(k, N, trials, seed,
                                                         parse_sweep_mode(mode), workers);
          return report_json({r});
        },
        py::arg("k"), py::arg("N"), py::arg("n") = 0, py::arg("trials") = 10000,
        py::arg("seed") = 1, py::arg("mode") = "full-sweep", py::arg("workers") = 0);
  m.def("exhaustive_json",
        [](std::int64_t k, std::int64_t N, std::int64_t n, const std::string& mode) {
          const Event event = n > 0 ? Event::phi(n) : Event::any(parse_sweep_mode(mode));
          return report_json({exhaustive_enumeration(k, N, event)});
        },
        py::arg("k"), py::arg("N"), py::arg("n") = 0, py::arg("mode") = "full-sweep");
  m.def("decay_json",
        [](Ints ks, std::int64_t N, std::int64_t trials, std::uint64_t seed,
           const std::string& mode, unsigned workers) {
          return report_json(decay_series(ks, N, trials, seed, parse_sweep_mode(mode), workers));
        },
        py::arg("ks"), py::arg("N"), py::arg("trials") = 10000, py::arg("seed") = 1,
        py::arg("mode") = "fs-pruned", py::arg("workers") = 0);
}
