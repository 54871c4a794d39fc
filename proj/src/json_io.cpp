#include "holonome/json_io.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace holonome {

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational as \"p/q\" or an integer");
}

std::string normalization_name(Normalization n) { return n == Normalization::trace ? "trace" : "basic"; }

template <class M, class F>
json rows_to_json(const M& m, F&& cell) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(cell(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class M, class F>
M rows_from_json(const json& j, F&& cell) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  const std::size_t r = j.size();
  const std::size_t c = r == 0 ? 0 : j[0].size();
  M m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) throw std::invalid_argument("matrix rows have different lengths");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = cell(j[i][k]);
  }
  return m;
}

}  // namespace

json to_json(const QMatrix& m) {
  return rows_to_json(m, [](const Rational& x) { return to_string(x); });
}

QMatrix qmatrix_from_json(const json& j) { return rows_from_json<QMatrix>(j, rational_from_json); }

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument("expected a complex number as [re, im] or a number");
}

json to_json(const CMatrix& m) {
  return rows_to_json(m, [](cplx z) { return to_json(z); });
}

CMatrix cmatrix_from_json(const json& j) { return rows_from_json<CMatrix>(j, cplx_from_json); }

json to_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (cplx z : v) a.push_back(to_json(z));
  return a;
}

json connection_to_json(const FlatConnection& conn) {
  json forms = json::array();
  for (const auto& f : conn.arrangement.forms) {
    json row = json::array();
    for (const auto& x : f) row.push_back(to_string(x));
    forms.push_back(std::move(row));
  }
  json residues = json::array();
  for (const auto& r : conn.exact_residues) residues.push_back(to_json(r));
  return {{"base_dim", conn.arrangement.base_dim},
          {"forms", forms},
          {"residues", residues},
          {"h", to_json(conn.class_coupling.empty() ? cplx(0.0) : conn.class_coupling.front())}};
}

FlatConnection connection_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("connection must be a JSON object");
  FlatConnection conn;
  conn.arrangement.base_dim = j.at("base_dim").get<std::size_t>();
  for (const auto& f : j.at("forms")) {
    std::vector<Rational> form;
    for (const auto& x : f) form.push_back(rational_from_json(x));
    conn.arrangement.forms.push_back(std::move(form));
  }
  for (const auto& r : j.at("residues")) conn.exact_residues.push_back(qmatrix_from_json(r));
  conn.weight_class.assign(conn.exact_residues.size(), 0);
  conn.class_coupling = {cplx_from_json(j.at("h"))};
  conn.fiber_dim = conn.exact_residues.empty() ? 0 : conn.exact_residues.front().rows();
  conn.label = "json";
  conn.validate();
  return conn;
}

json representation_to_json(const Representation& rep) {
  auto list = [](const std::vector<QMatrix>& ms) {
    json a = json::array();
    for (const auto& m : ms) a.push_back(to_json(m));
    return a;
  };
  json j = {{"schema", "1"},
            {"root_system", rep.root_system.name()},
            {"normalization", normalization_name(rep.root_system.normalization)},
            {"kind", rep.kind},
            {"dim", rep.dim},
            {"factor_dims", rep.factor_dims},
            {"e", list(rep.e)},
            {"f", list(rep.f)},
            {"h", list(rep.h)}};
  if (rep.has_center) j["center"] = to_json(rep.center);
  return j;
}

Representation representation_from_json(const json& j) {
  Representation rep;
  rep.root_system = parse_root_system(j.at("root_system").get<std::string>(),
                                      parse_normalization(j.at("normalization").get<std::string>()));
  rep.kind = j.at("kind").get<std::string>();
  rep.dim = j.at("dim").get<std::size_t>();
  rep.factor_dims = j.at("factor_dims").get<std::vector<std::size_t>>();
  for (const auto& m : j.at("e")) rep.e.push_back(qmatrix_from_json(m));
  for (const auto& m : j.at("f")) rep.f.push_back(qmatrix_from_json(m));
  for (const auto& m : j.at("h")) rep.h.push_back(qmatrix_from_json(m));
  const std::size_t np = rep.root_system.positive_roots.size();
  if (rep.e.size() != np || rep.f.size() != np || rep.h.size() != np)
    throw std::invalid_argument("cached representation has the wrong number of root operators");
  for (const auto* list : {&rep.e, &rep.f, &rep.h})
    for (const auto& m : *list)
      if (m.rows() != rep.dim || m.cols() != rep.dim) throw std::invalid_argument("cached operator has the wrong size");
  if (j.contains("center")) {
    rep.center = qmatrix_from_json(j.at("center"));
    rep.has_center = true;
  }
  assign_weights(rep);
  return rep;
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, target);
}

Representation cached_build_rep(const RootSystem& rs, const RepKind& kind) {
  const char* dir = std::getenv("HOLONOME_CACHE");
  if (dir == nullptr || *dir == '\0') return build_rep(rs, kind);
  std::string key = rs.name() + "_" + normalization_name(rs.normalization) + "_" + kind.describe();
  for (char& c : key)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '-';
  const std::filesystem::path file = std::filesystem::path(dir) / (key + ".json");
  if (std::filesystem::exists(file)) {
    try {
      std::ifstream in(file);
      const Representation rep = representation_from_json(json::parse(in));
      if (check_relations(rep).ok) return rep;
    } catch (const std::exception&) {
      // Corrupt or stale entry: rebuild below.
    }
  }
  Representation rep = build_rep(rs, kind);
  try {
    write_file_atomic(file.string(), representation_to_json(rep).dump());
  } catch (const std::exception&) {
    // Caching is best effort.
  }
  return rep;
}

}  // namespace holonome
