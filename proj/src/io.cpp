#include "dedekind/io.hpp"

namespace dedekind::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t size_of(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ValidationError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be a list");
  return j;
}

}  // namespace

Rat rat(const json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(BigInt(std::to_string(j.get<long long>())));
  throw ValidationError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

json to_json(const Rat& q) { return to_string(q); }
json to_json(const BigInt& z) { return to_string(z); }

RatVec rat_vec(const json& j) {
  RatVec v;
  for (const auto& x : array(j, "vector")) v.push_back(rat(x));
  return v;
}

RatMat rat_mat(const json& j) {
  std::vector<RatVec> rows;
  for (const auto& r : array(j, "matrix")) rows.push_back(rat_vec(r));
  if (rows.empty()) throw ValidationError("empty matrix");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw ValidationError("matrix rows have different lengths");
  return RatMat::from_rows(rows, rows.front().size());
}

IntMat int_mat(const json& j) {
  RatMat m = rat_mat(j);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k)
      if (!is_integer(m(i, k))) throw ValidationError("matrix entries must be integers");
  return to_int(m);
}

DedekindSum sum(const json& j) {
  DedekindSum s;
  s.sigma = rat_mat(field(j, "sigma"));
  s.n = j.contains("n") ? size_of(j.at("n"), "n") : s.sigma.rows();
  s.rank = j.contains("rank") ? size_of(j.at("rank"), "rank") : s.n;
  for (const auto& x : array(field(j, "e"), "e")) {
    if (!x.is_number_integer() || x.get<long long>() < 1) throw ValidationError("exponents must be positive integers");
    s.e.push_back(x.get<unsigned>());
  }
  s.v = j.contains("v") ? rat_vec(j.at("v")) : RatVec(s.n, 0);
  if (j.contains("scale")) s.scale = rat(j.at("scale"));
  s.validate();
  return s;
}

json to_json(const DedekindSum& s) {
  json sig = json::array();
  for (std::size_t i = 0; i < s.sigma.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < s.sigma.cols(); ++k) row.push_back(to_json(s.sigma(i, k)));
    sig.push_back(row);
  }
  json v = json::array();
  for (const auto& x : s.v) v.push_back(to_json(x));
  return {{"n", s.n}, {"rank", s.rank}, {"sigma", sig}, {"e", s.e}, {"v", v}, {"scale", to_json(s.scale)}};
}

json to_json(const SumValue& v) { return {{"coeff", to_json(v.coeff)}, {"power", v.power}}; }

std::optional<QForm> qform(const json& j) {
  if (!j.is_object() || !j.contains("Q")) return std::nullopt;
  return QForm::rational(rat_mat(j.at("Q")));
}

json to_json(const LatticeTerm& t) {
  json basis = json::array();
  for (std::size_t k = 0; k < t.basis.cols(); ++k) {
    json col = json::array();
    for (std::size_t i = 0; i < t.basis.rows(); ++i) col.push_back(to_json(t.basis(i, k)));
    basis.push_back(col);
  }
  json forms = json::array();
  for (const auto& b : t.blocks) {
    json f = json::array();
    for (const auto& x : b.form) f.push_back(to_json(x));
    forms.push_back({{"form", f}, {"mult", b.mult}});
  }
  return {{"basis", basis}, {"forms", forms}};
}

json to_json(const Combination& c) {
  json out = json::array();
  for (const auto& [t, x] : c.terms()) {
    json rec = to_json(t);
    rec["coeff"] = to_json(x);
    out.push_back(rec);
  }
  return out;
}

json to_json(const ReductionStats& s) {
  json leaves = json::object(), nodes = json::object(), trace = json::object();
  for (const auto& [k, c] : s.leaves_by_rank) leaves[std::to_string(k)] = c;
  for (const auto& [k, c] : s.nodes_by_rank) nodes[std::to_string(k)] = c;
  for (const auto& [k, t] : s.index_trace) {
    json a = json::array();
    for (const auto& x : t) a.push_back(to_json(x));
    trace[std::to_string(k)] = a;
  }
  return {{"leaves_by_rank", leaves},
          {"nodes_by_rank", nodes},
          {"leaves", s.leaf_count()},
          {"reciprocity_steps", s.reciprocity_steps},
          {"index_trace", trace}};
}

HomPoly hom_poly(const json& j) {
  HomPoly p(size_of(field(j, "nvars"), "nvars"));
  for (const auto& t : array(field(j, "terms"), "terms")) {
    Exponent r;
    for (const auto& x : array(field(t, "exp"), "exp")) {
      if (!x.is_number_integer() || x.get<long long>() < 0) throw ValidationError("exponents must be nonnegative");
      r.push_back(x.get<unsigned>());
    }
    if (r.size() != p.nvars()) throw ValidationError("exponent length differs from nvars");
    p.add(r, rat(field(t, "coeff")));
  }
  if (!p.is_homogeneous()) throw ValidationError("polynomial is not homogeneous");
  return p;
}

json to_json(const HomPoly& p) {
  json terms = json::array();
  for (const auto& [r, c] : p.terms()) terms.push_back({{"exp", r}, {"coeff", to_json(c)}});
  return {{"nvars", p.nvars()}, {"terms", terms}};
}

MatrixTuple matrix_tuple(const json& j) {
  MatrixTuple a;
  for (const auto& m : array(j, "matrix tuple")) a.push_back(rat_mat(m));
  return a;
}

FieldData field_data(const json& j, long f_gen) {
  NumberField k(rat_vec(field(j, "min_poly")));
  FieldData d{k, {}, {}, 1};
  for (const auto& w : array(field(j, "basis_W"), "basis_W")) d.W.push_back(Rat(f_gen) * k.elem(rat_vec(w)));
  if (j.contains("units"))
    for (const auto& u : array(j.at("units"), "units")) d.units.push_back(k.elem(rat_vec(u)));
  if (j.contains("norm_b")) d.norm_b = rat(j.at("norm_b"));
  return d;
}

ZetaRequest zeta_request(const json& j, std::optional<long> f_gen) {
  long f = 1;
  if (f_gen)
    f = *f_gen;
  else if (j.contains("f_gen")) {
    if (!j.at("f_gen").is_number_integer()) throw ValidationError("f_gen must be an integer");
    f = j.at("f_gen").get<long>();
  }
  if (f < 1) throw ValidationError("f_gen must be positive");
  ZetaRequest r{field_data(j, f), 1};
  if (j.contains("s")) {
    if (!j.at("s").is_number_integer() || j.at("s").get<long long>() < 1) throw ValidationError("s must be positive");
    r.s = j.at("s").get<unsigned>();
  }
  return r;
}

RootSystemData root_data(const json& j) {
  if (!j.is_object()) throw ValidationError("root system must be an object");
  std::string type = j.contains("type") ? j.at("type").get<std::string>() : "";
  if (!j.contains("roots")) return root_system(type, size_of(field(j, "rank"), "rank"));
  std::vector<IntVec> roots;
  IntMat m = int_mat(j.at("roots"));
  for (std::size_t i = 0; i < m.rows(); ++i) roots.push_back(m.row(i));
  std::vector<BigInt> heights;
  if (j.contains("heights"))
    for (const auto& h : rat_vec(j.at("heights"))) {
      if (!is_integer(h)) throw ValidationError("heights must be integers");
      heights.push_back(h.get_num());
    }
  Rat w = rat(field(j, "weyl_order"));
  if (!is_integer(w) || w <= 0) throw ValidationError("weyl_order must be a positive integer");
  return root_system_from(type, std::move(roots), w.get_num(), std::move(heights));
}

json to_json(const ZetaValue& z) { return {{"coeff", to_json(z.coeff)}, {"pi_power", z.pi_power}}; }

}  // namespace dedekind::io
