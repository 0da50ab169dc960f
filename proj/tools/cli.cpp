#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bipart/arith.hpp"
#include "bipart/congruence_lab.hpp"
#include "bipart/etaquotients.hpp"
#include "bipart/partitions.hpp"
#include "bipart/radu.hpp"

namespace bipart::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kDefaultCap = 10'000'000;

enum class Format { json, csv, pretty };

Json number(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// Serialises every report through one writer so lines never interleave.
class Emitter {
 public:
  Emitter(Format f, bool stamp, std::ostream& out, std::ostream& err) : format_(f), stamp_(stamp), out_(out), err_(err) {}

  void emit(Json obj) {
    if (stamp_) obj["timestamp"] = timestamp();
    switch (format_) {
      case Format::json:
        out_ << obj.dump() << '\n';
        break;
      case Format::csv:
        if (!header_done_) {
          std::string sep;
          for (const auto& [k, v] : obj.items()) {
            out_ << sep << k;
            sep = ",";
          }
          out_ << '\n';
          header_done_ = true;
        }
        {
          std::string sep;
          for (const auto& [k, v] : obj.items()) {
            out_ << sep << csv_cell(v);
            sep = ",";
          }
          out_ << '\n';
        }
        break;
      case Format::pretty: {
        std::size_t width = 0;
        for (const auto& [k, v] : obj.items()) width = std::max(width, k.size());
        for (const auto& [k, v] : obj.items()) {
          err_ << std::left << std::setw(static_cast<int>(width)) << k << "  " << (v.is_string() ? v.get<std::string>() : v.dump())
               << '\n';
        }
        err_ << '\n';
        break;
      }
    }
  }

 private:
  Format format_;
  bool stamp_;
  std::ostream& out_;
  std::ostream& err_;
  bool header_done_ = false;
};

Factorization parse_factorization(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty factorisation");
  std::map<std::int64_t, int> acc;
  std::size_t pos = 0;
  while (true) {
    const std::size_t star = text.find('*', pos);
    const std::string term = text.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
    const std::size_t caret = term.find('^');
    std::size_t used = 0;
    const std::string base_s = term.substr(0, caret);
    const std::int64_t base = std::stoll(base_s, &used);
    if (used != base_s.size() || base < 2) throw std::invalid_argument("bad factor '" + term + "'");
    int e = 1;
    if (caret != std::string::npos) {
      const std::string exp_s = term.substr(caret + 1);
      e = std::stoi(exp_s, &used);
      if (used != exp_s.size() || e < 1) throw std::invalid_argument("bad exponent in '" + term + "'");
    }
    for (const auto& [q, qe] : factorize(base)) acc[q] += qe * e;
    if (star == std::string::npos) break;
    pos = star + 1;
  }
  return Factorization(acc.begin(), acc.end());
}

std::string factorization_string(const Factorization& f) {
  std::string s;
  for (const auto& [q, e] : f) {
    if (!s.empty()) s += "*";
    s += std::to_string(q);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

Json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return Json{{"t_prime", w->residue}, {"n", w->n}, {"value", number(w->value)}};
}

Json radu_json(const VerificationReport& r) {
  const RSContext& c = r.context;
  Json j;
  j["cmd"] = "radu";
  j["p"] = r.input.p;
  j["m"] = factorization_string(r.input.m);
  j["t"] = r.input.t;
  j["u"] = r.input.u;
  j["status"] = to_string(r.status);
  j["kappa"] = c.kappa;
  j["N"] = c.level;
  j["A_t"] = c.a_t;
  j["epsilon_p"] = c.epsilon_p;
  j["P_t"] = c.p_set.residues;
  j["nu"] = c.nu_floor;
  j["checked"] = r.checked_n_max;
  j["witness"] = witness_json(r.witness);
  j["extended_n_max"] = r.extended_n_max;
  j["extended_scan_ok"] = r.extended_scan_ok;
  j["extended_witness"] = witness_json(r.extended_witness);
  j["reason"] = r.reason;
  j["warnings"] = r.warnings;
  return j;
}

Json family_json(const FamilyReport& r) {
  Json j;
  j["cmd"] = r.id.rfind("newman_", 0) == 0 ? "newman" : "families";
  j["id"] = r.id;
  j["primes"] = r.params.primes;
  j["k"] = r.params.k;
  j["j"] = r.params.j;
  j["r"] = r.params.r;
  j["modulus"] = r.modulus;
  j["n_min"] = r.n_min;
  j["n_max"] = r.n_max;
  j["checked"] = r.checked;
  j["statement"] = r.statement;
  j["verdict"] = to_string(r.verdict);
  if (r.counterexample) {
    j["counterexample"] = Json{{"n", r.counterexample->n},
                               {"index", r.counterexample->lhs_index},
                               {"lhs", number(r.counterexample->lhs)},
                               {"rhs", number(r.counterexample->rhs)}};
  } else {
    j["counterexample"] = nullptr;
  }
  j["reason"] = r.reason;
  return j;
}

std::size_t cap_from_env() {
  if (const char* v = std::getenv("BIPART_MAX_COEFFS")) {
    try {
      const long long c = std::stoll(v);
      if (c > 0) return static_cast<std::size_t>(c);
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("BIPART_MAX_COEFFS must be a positive integer");
  }
  return kDefaultCap;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regular bipartition q-series, eta-quotients and congruence checks", "bipart"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_s = "json";
  bool no_timestamp = false;
  long long cap_flag = 0;
  app.add_option("--format", format_s, "json (JSON lines), csv, or pretty (table on stderr)")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
  app.add_option("--max-coeffs", cap_flag, "coefficient budget (default $BIPART_MAX_COEFFS or 10^7)")
      ->check(CLI::PositiveNumber);

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "print B_l(n) for 0 <= n < T");
  std::int64_t c_l = 0, c_t = 0;
  std::uint64_t c_mod = 0;
  coeffs->add_option("--l", c_l, "l >= 2")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  coeffs->add_option("--T", c_t, "number of coefficients")->required()->check(CLI::PositiveNumber);
  coeffs->add_option("--mod", c_mod, "reduce modulo M (0 = exact)");

  // eta
  auto* eta = app.add_subcommand("eta", "profile and cusp orders of an eta-quotient");
  std::string e_spec;
  std::int64_t e_level = 0;
  eta->add_option("spec", e_spec, "delta^r*delta^r*...")->required();
  eta->add_option("--N", e_level, "level (default: least valid multiple of the deltas' lcm)")->check(CLI::PositiveNumber);

  // radu
  auto* radu = app.add_subcommand("radu", "finite verification of B_p(mn + t) = 0 (mod u)");
  std::int64_t r_p = 0, r_u = 0, r_safety = 10;
  std::string r_m, r_t = "all";
  bool r_strict = false;
  radu->add_option("--p", r_p, "prime p >= 3")->required();
  radu->add_option("--m", r_m, "m as p^e*q^f")->required();
  radu->add_option("--t", r_t, "residue 0 <= t < m, or 'all'");
  radu->add_option("--u", r_u, "modulus u >= 1")->required();
  radu->add_option("--safety", r_safety, "extended scan reaches safety * nu_bound");
  radu->add_flag("--strict-s", r_strict, "let s range over all units of Z/24m");

  // families
  auto* families = app.add_subcommand("families", "scan a congruence family for n <= nmax");
  std::string f_id, f_primes;
  std::int64_t f_p = 0, f_k = 0, f_j = 1, f_r = 0, f_nmax = 200;
  families->add_option("--id", f_id, "family id")->required()->check(CLI::IsMember(family_ids()));
  families->add_option("--p", f_p, "prime p");
  families->add_option("--primes", f_primes, "comma-separated p_1,...,p_{k+1} (thm8/thm10)");
  families->add_option("--k", f_k, "k");
  families->add_option("--j", f_j, "j");
  families->add_option("--r", f_r, "r");
  families->add_option("--nmax", f_nmax, "largest n")->check(CLI::NonNegativeNumber);

  // hecke
  auto* hecke = app.add_subcommand("hecke", "check that an eta-quotient is a T_q eigenform");
  std::string h_spec;
  std::int64_t h_q = 0, h_t = 10000;
  hecke->add_option("spec", h_spec, "eta-quotient, e.g. 6^4")->required();
  hecke->add_option("--q", h_q, "prime q")->required();
  hecke->add_option("--T", h_t, "truncation")->check(CLI::PositiveNumber);

  // newman
  auto* newman = app.add_subcommand("newman", "check Newman's recurrence, or list primes meeting its hypothesis");
  std::string n_kind;
  std::int64_t n_p = 0, n_t = 10000, n_discover = 0;
  newman->add_option("--kind", n_kind, "f1f3 or f1cubed_f5")->required()->check(CLI::IsMember({"f1f3", "f1cubed_f5"}));
  newman->add_option("--p", n_p, "prime p = 1 (mod 6)");
  newman->add_option("--T", n_t, "truncation")->check(CLI::PositiveNumber);
  newman->add_option("--discover", n_discover, "list qualifying primes below this bound")->check(CLI::PositiveNumber);

  // density
  auto* density = app.add_subcommand("density", "fraction of n <= X with B_l(n) = 0 (mod p^j)");
  std::int64_t d_l = 0, d_p = 0, d_j = 1, d_stride = 0;
  std::string d_x;
  density->add_option("--l", d_l, "l >= 2")->required();
  density->add_option("--p", d_p, "prime p")->required();
  density->add_option("--j", d_j, "exponent j >= 1");
  density->add_option("--X", d_x, "comma-separated X values")->required();
  density->add_option("--stride", d_stride, "also report every multiple of this below max X")->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Format format = format_s == "csv" ? Format::csv : format_s == "pretty" ? Format::pretty : Format::json;
    const std::size_t cap = cap_flag > 0 ? static_cast<std::size_t>(cap_flag) : cap_from_env();
    Emitter emit(format, !no_timestamp, out, err);
    bool all_ok = true;

    if (*coeffs) {
      if (static_cast<std::uint64_t>(c_t) > cap) throw std::length_error("T exceeds the coefficient budget");
      if (c_mod == 1) throw std::invalid_argument("--mod must be 0 or >= 2");
      const SeriesRing ring = c_mod == 0 ? SeriesRing::exact(static_cast<std::size_t>(c_t))
                                         : SeriesRing::modular(static_cast<std::size_t>(c_t), c_mod);
      const auto s = bipartition_coeffs(c_l, ring).series;
      for (std::size_t n = 0; n < s.order(); ++n) {
        Json row;
        row["n"] = n;
        row["value"] = number(s.coeff(n));
        emit.emit(std::move(row));
      }
    } else if (*eta) {
      const auto terms = parse_eta_terms(e_spec);
      std::int64_t base = 1;
      for (const auto& t : terms) base = lcm(base, t.delta);
      std::int64_t level = e_level;
      if (level == 0) level = min_level(terms, base).value_or(base);
      const EtaQuotient q(terms, level);
      const HolomorphyReport h = holomorphy_report(q);
      Json j;
      j["cmd"] = "eta";
      j["spec"] = e_spec;
      j["N"] = level;
      j["weight_twice"] = h.profile.weight_twice;
      j["k"] = h.profile.integral_weight() ? Json(h.profile.weight()) : Json(std::to_string(h.profile.weight_twice) + "/2");
      j["s"] = to_string(h.profile.character_disc);
      j["leading_exponent"] = to_string(h.profile.prefactor);
      j["thm23_ok"] = h.profile.level_conditions_ok;
      Json cusps = Json::array();
      for (const auto& c : h.cusps) cusps.push_back(Json{{"d", c.d}, {"order", to_string(c.order)}});
      j["cusps"] = cusps;
      j["holomorphic"] = h.holomorphic;
      j["verdict"] = h.modular_form ? "modular_form" : "not_modular_form";
      all_ok = h.modular_form;
      emit.emit(std::move(j));
    } else if (*radu) {
      VerifyOptions opts;
      opts.s_set = r_strict ? SSet::all_units : SSet::squares;
      opts.safety_factor = r_safety;
      opts.max_coefficients = cap;
      const Factorization m = parse_factorization(r_m);
      std::vector<VerificationReport> reports;
      if (r_t == "all") {
        reports = search_families(r_p, m, r_u, opts);
      } else {
        std::size_t used = 0;
        const std::int64_t t = std::stoll(r_t, &used);
        if (used != r_t.size()) throw std::invalid_argument("--t must be an integer or 'all'");
        reports.push_back(verify_congruence({r_p, m, t, r_u}, opts));
      }
      for (const auto& r : reports) {
        all_ok = all_ok && r.status == VerificationStatus::proved && r.extended_scan_ok;
        emit.emit(radu_json(r));
      }
    } else if (*families) {
      FamilyParams params;
      if (!f_primes.empty()) {
        params.primes = parse_list(f_primes);
      } else if (f_p != 0) {
        params.primes = {f_p};
      } else {
        throw std::invalid_argument("families needs --p or --primes");
      }
      params.k = f_k;
      params.j = f_j;
      params.r = f_r;
      CoefficientCache cache(cap);
      const FamilyReport r = verify_family(f_id, params, f_nmax, cache);
      all_ok = r.verdict == Verdict::pass;
      emit.emit(family_json(r));
    } else if (*hecke) {
      const auto terms = parse_eta_terms(h_spec);
      std::int64_t base = 1;
      for (const auto& t : terms) base = lcm(base, t.delta);
      const EtaQuotient q(terms, min_level(terms, base).value_or(base));
      if (static_cast<std::uint64_t>(h_t) > cap) throw std::length_error("T exceeds the coefficient budget");
      const EtaProfile prof = profile(q);
      if (!prof.integral_weight()) throw std::invalid_argument("hecke needs an integral-weight quotient");
      const int chi = character_kronecker(prof, h_q);
      const TruncatedSeries a = expand(q, SeriesRing::exact(static_cast<std::size_t>(h_t)));
      const HeckeReport r = check_eigenform(a, h_q, static_cast<int>(prof.weight()), chi, h_spec);
      Json j;
      j["cmd"] = "hecke";
      j["series"] = r.series_id;
      j["q"] = r.q;
      j["k"] = r.k;
      j["chi_q"] = r.chi_q;
      j["T"] = r.order;
      j["eigenvalue"] = r.ok() ? number(r.eigenvalue) : Json("violated");
      j["violation_n"] = r.violation ? Json(*r.violation) : Json(nullptr);
      j["verdict"] = r.ok() ? "pass" : "fail";
      all_ok = r.ok();
      emit.emit(std::move(j));
    } else if (*newman) {
      const NewmanKind kind = parse_newman_kind(n_kind);
      if (n_discover > 0) {
        Json j;
        j["cmd"] = "newman";
        j["kind"] = n_kind;
        j["bound"] = n_discover;
        j["primes"] = discover_newman_primes(kind, n_discover);
        emit.emit(std::move(j));
      } else {
        if (n_p == 0) throw std::invalid_argument("newman needs --p or --discover");
        if (static_cast<std::uint64_t>(n_t) > cap) throw std::length_error("T exceeds the coefficient budget");
        const FamilyReport r = newman_check(kind, n_p, static_cast<std::size_t>(n_t));
        all_ok = r.verdict == Verdict::pass;
        emit.emit(family_json(r));
      }
    } else if (*density) {
      const DensityScan scan = density_scan(d_l, d_p, d_j, parse_list(d_x), d_stride, cap);
      for (const auto& pt : scan.points) {
        Json j;
        j["cmd"] = "density";
        j["l"] = scan.ell;
        j["p"] = scan.p;
        j["j"] = scan.j;
        j["X"] = pt.x;
        j["divisible_count"] = pt.divisible_count;
        j["fraction"] = to_string(pt.fraction);
        j["fraction_approx"] = pt.fraction.get_d();
        j["growth_condition"] = scan.growth_condition;
        emit.emit(std::move(j));
      }
    }
    return all_ok ? kOk : kVerdictFailed;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kResourceCap;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  }
}

}  // namespace bipart::cli
