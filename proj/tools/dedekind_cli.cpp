#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dedekind/io.hpp"

using namespace dedekind;
using io::json;

#ifndef DEDEKIND_PRESET_DIR
#define DEDEKIND_PRESET_DIR "presets"
#endif

namespace {

struct Common {
  std::string input, inline_json, preset, format = "json";
  unsigned threads = 1;
  bool stats = false, check = false;
};

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return json::parse(in);
}

json load(const Common& c, bool required = true) {
  int given = !c.input.empty() + !c.inline_json.empty() + !c.preset.empty();
  if (given > 1) throw ValidationError("give only one of --input, --json, --preset");
  if (!c.inline_json.empty()) return json::parse(c.inline_json);
  if (c.input == "-") return json::parse(std::cin);
  if (!c.input.empty()) return read_file(c.input);
  if (!c.preset.empty()) {
    if (c.preset.find('/') != std::string::npos || c.preset.find(".json") != std::string::npos)
      return read_file(c.preset);
    return read_file(std::string(DEDEKIND_PRESET_DIR) + "/" + c.preset + ".json");
  }
  if (required) throw ValidationError("no input: use --input, --json or --preset");
  return json::object();
}

// the record of input["expect"][section] whose keys agree with `match`
std::optional<json> expected(const json& in, const std::string& section, const json& match) {
  if (!in.is_object() || !in.contains("expect") || !in["expect"].contains(section)) return std::nullopt;
  for (const auto& rec : in["expect"][section]) {
    bool ok = true;
    for (const auto& [k, v] : match.items()) ok = ok && rec.contains(k) && rec[k] == v;
    if (ok) return rec;
  }
  return std::nullopt;
}

void check_value(const Common& c, const json& in, const std::string& section, const json& match,
                 const std::string& key, const json& got) {
  if (!c.check) return;
  auto rec = expected(in, section, match);
  if (!rec) throw CheckFailed("no reference value for " + match.dump());
  if ((*rec)[key] != got)
    throw CheckFailed("mismatch at " + match.dump() + ": expected " + (*rec)[key].dump() + ", got " + got.dump());
}

void render_text(const json& out, std::ostream& os) {
  if (out.is_string()) {
    os << out.get<std::string>() << "\n";
    return;
  }
  if (!out.is_object()) {
    os << out.dump() << "\n";
    return;
  }
  for (const auto& [k, v] : out.items()) {
    if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << k << ":\n";
      std::vector<std::string> cols;
      for (const auto& [ck, cv] : v.front().items()) cols.push_back(ck);
      for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "\t" : "  ") << cols[i];
      os << "\n";
      for (const auto& row : v) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
          const json& cell = row[cols[i]];
          os << (i ? "\t" : "  ") << (cell.is_string() ? cell.get<std::string>() : cell.dump());
        }
        os << "\n";
      }
    } else {
      os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void emit(const Common& c, const json& out) {
  if (c.format == "text")
    render_text(out, std::cout);
  else
    std::cout << out.dump(2) << "\n";
}

std::pair<long, long> parse_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      long n = std::stol(s);
      return {n, n};
    }
    return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ValidationError("bad range '" + s + "', expected N or A..B");
  }
}

json zeta_stats(const ZetaStats& st) {
  return {{"orbit_size", st.orbit_size}, {"leaves", st.leaves}, {"reduction", io::to_json(st.reduction)}};
}

json validate_report(const json& in) {
  std::vector<std::string> findings;
  std::string kind = "unknown";
  auto attempt = [&](auto&& fn) {
    try {
      fn();
    } catch (const ValidationError& e) {
      findings.push_back(e.what());
    } catch (const DegeneracyError& e) {
      findings.push_back(e.what());
    }
  };
  if (in.contains("min_poly")) {
    kind = "field";
    attempt([&] {
      long f = in.contains("f_gen") ? in["f_gen"].get<long>() : 1;
      for (auto& s : validate(io::field_data(in, f))) findings.push_back(s);
    });
  } else if (in.contains("sigma")) {
    kind = "sum";
    attempt([&] {
      DedekindSum s = io::sum(in);
      if (det(s.sigma) == 0) findings.push_back("sigma is singular");
      Normalized nz = normalize(s);
      if (!is_normalized(nz.sum)) findings.push_back("normalization failed");
    });
  } else if (in.contains("A")) {
    kind = "cocycle";
    attempt([&] {
      MatrixTuple a = io::matrix_tuple(in["A"]);
      strata(a);
      if (in.contains("P")) io::hom_poly(in["P"]);
      if (in.contains("v") && io::rat_vec(in["v"]).size() != a.front().rows()) findings.push_back("v has the wrong length");
    });
  } else if (in.contains("type") || in.contains("roots")) {
    kind = "root_system";
    attempt([&] { sigma_matrix(io::root_data(in)); });
  } else {
    findings.push_back("unrecognized input");
  }
  return {{"kind", kind}, {"findings", findings}};
}

void add_common(CLI::App* sub, Common& c, bool with_input = true) {
  if (with_input) {
    sub->add_option("--input", c.input, "JSON file, or - for stdin");
    sub->add_option("--json", c.inline_json, "inline JSON");
    sub->add_option("--preset", c.preset, "bundled preset name or path");
  }
  sub->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  sub->add_flag("--stats", c.stats, "include reduction statistics");
  sub->add_flag("--check", c.check, "compare with the preset's reference values");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Dedekind sums, Eisenstein cocycle, partial zeta values and Witten zeta values"};
  app.require_subcommand(1);
  Common c;

  auto* eval_sum = app.add_subcommand("eval-sum", "exact value of a Dedekind sum");
  add_common(eval_sum, c);

  auto* reduce = app.add_subcommand("reduce", "rewrite a sum as unimodular diagonal sums");
  add_common(reduce, c);

  auto* cocycle = app.add_subcommand("cocycle", "evaluate the Eisenstein cocycle");
  add_common(cocycle, c);

  auto* zeta = app.add_subcommand("zeta", "partial zeta value at 1 - s");
  add_common(zeta, c);
  std::optional<unsigned> s_opt;
  std::optional<long> f_opt;
  bool fast = false;
  zeta->add_option("--s", s_opt, "s >= 1")->check(CLI::PositiveNumber);
  zeta->add_option("--f-gen", f_opt, "generator N of the conductor (N)")->check(CLI::PositiveNumber);
  zeta->add_flag("--fast", fast, "continued fraction path (degree two only)");

  auto* zeta_table = app.add_subcommand("zeta-table", "N * zeta((1), (N), 1 - s) over a range of N");
  add_common(zeta_table, c);
  std::string range = "2..12";
  zeta_table->add_option("--N", range, "N or A..B");
  zeta_table->add_option("--s", s_opt, "s >= 1")->check(CLI::PositiveNumber);

  auto* witten = app.add_subcommand("witten", "Witten zeta value at 2m");
  add_common(witten, c);
  std::string type;
  std::optional<std::size_t> rank_opt;
  std::optional<unsigned> m_opt;
  bool norm_only = false, closed = false;
  witten->add_option("--type", type, "root system type");
  witten->add_option("--rank", rank_opt, "rank")->check(CLI::PositiveNumber);
  witten->add_option("--m", m_opt, "m >= 1")->check(CLI::PositiveNumber);
  witten->add_flag("--normalized", norm_only, "print only the normalized value");
  witten->add_flag("--closed-form", closed, "use the closed formula (A2, A3)");

  auto* witten_table = app.add_subcommand("witten-table", "normalized Witten zeta values for m = 1..M");
  add_common(witten_table, c);
  unsigned max_m = 3;
  witten_table->add_option("--type", type, "root system type");
  witten_table->add_option("--rank", rank_opt, "rank")->check(CLI::PositiveNumber);
  witten_table->add_option("--max-m", max_m, "largest m")->check(CLI::PositiveNumber);
  witten_table->add_flag("--closed-form", closed, "use the closed formula (A2, A3)");

  auto* validate_cmd = app.add_subcommand("validate", "report problems with an input");
  add_common(validate_cmd, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const ReduceOptions opt{c.threads};
  try {
    if (*eval_sum) {
      json in = load(c);
      DedekindSum s = io::sum(in);
      ReductionStats st;
      SumValue v = eval(s, io::qform(in), c.stats ? &st : nullptr, opt);
      json out = io::to_json(v);
      if (c.stats) out["stats"] = io::to_json(st);
      check_value(c, in, "eval-sum", json::object(), "coeff", out["coeff"]);
      emit(c, out);
    } else if (*reduce) {
      json in = load(c);
      DedekindSum s = io::sum(in);
      ReductionStats st;
      Combination leaves = reduce_full(s, &st, opt);
      json out{{"count", leaves.size()}, {"leaves", io::to_json(leaves)}};
      if (c.stats) out["stats"] = io::to_json(st);
      emit(c, out);
    } else if (*cocycle) {
      json in = load(c);
      if (!in.contains("A")) throw ValidationError("missing field \"A\"");
      MatrixTuple a = io::matrix_tuple(in["A"]);
      const std::size_t n = a.empty() ? 0 : a.front().rows();
      if (n == 0) throw ValidationError("empty matrix tuple");
      HomPoly p = in.contains("P") ? io::hom_poly(in["P"]) : HomPoly::constant(n, 1);
      RatVec v = in.contains("v") ? io::rat_vec(in["v"]) : RatVec(n, 0);
      auto q = io::qform(in);
      Rat psi = eisenstein(a, p, q ? *q : QForm::generic(n), v, opt);
      json out{{"psi", io::to_json(psi)}};
      check_value(c, in, "cocycle", json::object(), "psi", out["psi"]);
      emit(c, out);
    } else if (*zeta) {
      json in = load(c);
      auto req = io::zeta_request(in, f_opt);
      if (s_opt) req.s = *s_opt;
      ZetaStats st;
      Rat z = fast ? quadratic_fast(req.data, req.s) : partial_zeta(req.data, req.s, opt, c.stats ? &st : nullptr);
      json out{{"zeta", io::to_json(z)}};
      if (c.stats && !fast) out["stats"] = zeta_stats(st);
      const long f = f_opt ? *f_opt : in.value("f_gen", 1L);
      check_value(c, in, "zeta", {{"f_gen", f}, {"s", req.s}}, "zeta", out["zeta"]);
      emit(c, out);
    } else if (*zeta_table) {
      json in = load(c);
      auto [lo, hi] = parse_range(range);
      if (lo < 1 || hi < lo) throw ValidationError("need 1 <= A <= B in --N A..B");
      unsigned s = s_opt ? *s_opt : in.value("s", 1u);
      json rows = json::array();
      for (long N = lo; N <= hi; ++N) {
        auto req = io::zeta_request(in, N);
        Rat z = partial_zeta(req.data, s, opt);
        json row{{"N", N}, {"zeta", io::to_json(z)}, {"N_zeta", io::to_json(Rat(N) * z)}};
        check_value(c, in, "zeta", {{"f_gen", N}, {"s", s}}, "zeta", row["zeta"]);
        rows.push_back(row);
      }
      emit(c, json{{"s", s}, {"rows", rows}});
    } else if (*witten || *witten_table) {
      json in = load(c, false);
      if (!type.empty()) in["type"] = type;
      if (rank_opt) in["rank"] = *rank_opt;
      if (!in.contains("type") && !in.contains("roots")) throw ValidationError("give --type and --rank, or an input");
      RootSystemData R = io::root_data(in);
      auto value = [&](unsigned m, ReductionStats* st) {
        if (!closed) return witten_zeta(R, m, st, opt);
        if (R.type == "A" && R.rank == 2) return sl3_closed_form(m);
        if (R.type == "A" && R.rank == 3) return sl4_closed_form(m);
        throw ValidationError("closed form only for A2 and A3");
      };
      if (*witten) {
        unsigned m = m_opt ? *m_opt : in.value("m", 1u);
        if (m < 1) throw ValidationError("m must be positive");
        ReductionStats st;
        ZetaValue z = value(m, c.stats ? &st : nullptr);
        json nv = io::to_json(normalized(R, m, z));
        check_value(c, in, "witten", {{"m", m}}, "normalized", nv);
        if (norm_only) {
          emit(c, nv);
        } else {
          json out = io::to_json(z);
          out["m"] = m;
          out["normalized"] = nv;
          if (c.stats && !closed) out["stats"] = io::to_json(st);
          emit(c, out);
        }
      } else {
        json rows = json::array();
        for (unsigned m = 1; m <= max_m; ++m) {
          ZetaValue z = value(m, nullptr);
          json row{{"2m", 2 * m}, {"normalized", io::to_json(normalized(R, m, z))}};
          check_value(c, in, "witten", {{"m", m}}, "normalized", row["normalized"]);
          rows.push_back(row);
        }
        emit(c, json{{"type", R.type}, {"rank", R.rank}, {"rows", rows}});
      }
    } else if (*validate_cmd) {
      emit(c, validate_report(load(c)));
    }
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const DegeneracyError& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return 3;
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
