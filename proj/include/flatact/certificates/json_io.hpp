#pragma once

#include "flatact/certificates/flat.hpp"
#include "flatact/certificates/report.hpp"
#include "flatact/certificates/torus.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <variant>

namespace flatact {

using Json = nlohmann::json;
using Certificate = std::variant<TorusCertificate, FlatCertificate>;

namespace detail::cert_json {

inline void only_fields(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw MalformedInput("expected an object", where);
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw MalformedInput("unknown field '" + k + "'", where);
}

inline std::string path(const std::string& where, const std::string& field) {
  return where.empty() ? field : where + "." + field;
}

inline std::string path(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

inline const Json& field(const Json& j, const std::string& where, const char* name) {
  if (!j.contains(name)) throw MalformedInput("missing field '" + std::string(name) + "'", where);
  return j.at(name);
}

inline const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw MalformedInput("expected an array", where);
  return j;
}

inline Integer integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>()))
                                                           : Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw MalformedInput("expected an integer", where);
}

inline std::size_t count(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw MalformedInput("expected a non-negative integer", where);
  return j.get<std::size_t>();
}

inline Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

inline IntVector vector(const Json& j, const std::string& where, std::size_t len) {
  array(j, where);
  if (j.size() != len) throw MalformedInput("expected " + std::to_string(len) + " entries", where);
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer(j[i], path(where, i)));
  return v;
}

inline Json vector_json(const IntVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(integer_json(x));
  return j;
}

// Matrices are row lists; the shape is fixed by context so 0-row matrices stay unambiguous.
inline IntMatrix matrix(const Json& j, const std::string& where, std::size_t rows, std::size_t cols) {
  array(j, where);
  if (j.size() != rows) throw MalformedInput("expected " + std::to_string(rows) + " rows", where);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    auto r = vector(j[i], path(where, i), cols);
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = r[k];
  }
  return m;
}

inline Json matrix_json(const IntMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(vector_json(m.row(i)));
  return j;
}

// {"perm": {"degree": d, "generators": [[images]...]}} or {"table": {"rows": [[...]...], "generators": [...]}}
inline FiniteGroup group(const Json& j, const std::string& where) {
  if (!j.is_object() || j.size() != 1) throw MalformedInput("expected a 'perm' or 'table' block", where);
  try {
    if (j.contains("perm")) {
      const std::string w = path(where, "perm");
      const Json& p = j.at("perm");
      only_fields(p, w, {"degree", "generators"});
      const std::size_t d = count(field(p, w, "degree"), path(w, "degree"));
      const Json& gens = array(field(p, w, "generators"), path(w, "generators"));
      std::vector<Permutation> perms;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string gw = path(path(w, "generators"), i);
        array(gens[i], gw);
        if (gens[i].size() != d) throw MalformedInput("expected " + std::to_string(d) + " images", gw);
        std::vector<std::uint32_t> img;
        for (std::size_t k = 0; k < d; ++k) img.push_back(static_cast<std::uint32_t>(count(gens[i][k], gw)));
        try {
          perms.emplace_back(std::move(img));
        } catch (const std::invalid_argument&) {
          throw MalformedInput("not a permutation", gw);
        }
      }
      return FiniteGroup(PermGroup(d, std::move(perms)));
    }
    if (j.contains("table")) {
      const std::string w = path(where, "table");
      const Json& t = j.at("table");
      only_fields(t, w, {"rows", "generators"});
      const Json& rows = array(field(t, w, "rows"), path(w, "rows"));
      std::vector<std::vector<Element>> table;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string rw = path(path(w, "rows"), i);
        array(rows[i], rw);
        std::vector<Element> row;
        for (const auto& x : rows[i]) row.push_back(static_cast<Element>(count(x, rw)));
        table.push_back(std::move(row));
      }
      std::optional<std::vector<Element>> gens;
      if (t.contains("generators")) {
        gens.emplace();
        const Json& gj = array(t.at("generators"), path(w, "generators"));
        for (const auto& x : gj) gens->push_back(static_cast<Element>(count(x, path(w, "generators"))));
      }
      return FiniteGroup(EnumeratedGroup::from_table(table, gens));
    }
  } catch (const GroupError& e) {
    throw MalformedInput(e.what(), where);
  }
  throw MalformedInput("expected a 'perm' or 'table' block", where);
}

inline Json group_json(const FiniteGroup& g) {
  if (g.is_permutation_group()) {
    Json gens = Json::array();
    for (const auto& s : g.permutations().generators()) {
      Json img = Json::array();
      for (std::size_t i = 0; i < s.degree(); ++i) img.push_back(s[i]);
      gens.push_back(img);
    }
    return Json{{"perm", Json{{"degree", g.permutations().degree()}, {"generators", gens}}}};
  }
  return Json{{"table", Json{{"rows", g.table().table()}, {"generators", g.table().generators()}}}};
}

// Elements of permutation groups are written as image lists, elements of table groups as indices.
inline Element element(const Json& j, const std::string& where, const FiniteGroup& g, const EnumeratedGroup& e) {
  if (g.is_table_group()) {
    const std::size_t x = count(j, where);
    if (x >= e.size()) throw MalformedInput("element index out of range", where);
    return static_cast<Element>(x);
  }
  array(j, where);
  std::vector<std::uint32_t> img;
  for (const auto& x : j) img.push_back(static_cast<std::uint32_t>(count(x, where)));
  if (img.size() != g.permutations().degree()) throw MalformedInput("permutation has wrong degree", where);
  try {
    if (auto x = e.index_of(Permutation(std::move(img)))) return *x;
  } catch (const std::invalid_argument&) {
    throw MalformedInput("not a permutation", where);
  }
  throw MalformedInput("permutation is not in the group", where);
}

inline Json element_json(Element x, const FiniteGroup& g, const EnumeratedGroup& e) {
  if (g.is_table_group()) return Json(x);
  Json img = Json::array();
  const auto& p = e.permutation(x);
  for (std::size_t i = 0; i < p.degree(); ++i) img.push_back(p[i]);
  return img;
}

inline std::vector<Element> elements(const Json& j, const std::string& where, const FiniteGroup& g,
                                     const EnumeratedGroup& e) {
  array(j, where);
  std::vector<Element> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(element(j[i], path(where, i), g, e));
  return out;
}

inline Json elements_json(const std::vector<Element>& xs, const FiniteGroup& g, const EnumeratedGroup& e) {
  Json j = Json::array();
  for (auto x : xs) j.push_back(element_json(x, g, e));
  return j;
}

inline EnumeratedGroup enumerate(const FiniteGroup& g, const std::string& where) {
  try {
    return g.enumerate();
  } catch (const GroupError& e) {
    throw BoundExceeded(where + ": " + e.what());
  }
}

inline std::vector<IntMatrix> rho(const Json& j, std::size_t n, std::size_t generators) {
  array(j, "rho");
  if (j.size() != generators)
    throw MalformedInput("expected " + std::to_string(generators) + " matrices, one per generator", "rho");
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    IntMatrix m = matrix(j[i], path("rho", i), n, n);
    if (!m.is_unimodular()) throw MalformedInput("matrix for generator " + std::to_string(i) + " is not unimodular", path("rho", i));
    out.push_back(std::move(m));
  }
  return out;
}

struct AData {
  std::vector<Element> generators;
  FinAbGroup a;
};

// {"elements": [...], "invariant_factors": [...]}
inline AData a_block(const Json& j, const FiniteGroup& g, const EnumeratedGroup& e) {
  only_fields(j, "A_generators", {"elements", "invariant_factors"});
  AData d;
  d.generators = elements(field(j, "A_generators", "elements"), "A_generators.elements", g, e);
  const Json& f = array(field(j, "A_generators", "invariant_factors"), "A_generators.invariant_factors");
  std::vector<Integer> fs;
  for (std::size_t i = 0; i < f.size(); ++i) fs.push_back(integer(f[i], path("A_generators.invariant_factors", i)));
  try {
    d.a = FinAbGroup(std::move(fs));
  } catch (const std::invalid_argument& ex) {
    throw MalformedInput(ex.what(), "A_generators.invariant_factors");
  }
  if (d.generators.size() != d.a.rank())
    throw MalformedInput("expected one element per invariant factor", "A_generators");
  return d;
}

inline Json a_json(const std::vector<Element>& gens, const FinAbGroup& a, const FiniteGroup& g, const EnumeratedGroup& e) {
  Json f = Json::array();
  for (const auto& x : a.invariant_factors()) f.push_back(integer_json(x));
  return Json{{"elements", elements_json(gens, g, e)}, {"invariant_factors", f}};
}

inline std::size_t dimension(const Json& j) { return count(field(j, "", "n"), "n"); }

inline TorusCertificate torus(const Json& j) {
  only_fields(j, "", {"kind", "n", "group", "A_generators", "Q", "rho", "alpha"});
  TorusCertificate c;
  c.n = dimension(j);
  c.g = group(field(j, "", "group"), "group");
  const EnumeratedGroup ge = enumerate(c.g, "group");
  auto a = a_block(field(j, "", "A_generators"), c.g, ge);
  c.a_generators = std::move(a.generators);
  c.a = std::move(a.a);
  std::size_t q_gens = c.g.generator_count();
  if (j.contains("Q")) {
    const Json& q = j.at("Q");
    only_fields(q, "Q", {"group", "images"});
    SuppliedQuotient s;
    s.group = group(field(q, "Q", "group"), "Q.group");
    const EnumeratedGroup qe = enumerate(s.group, "Q.group");
    s.images = elements(field(q, "Q", "images"), "Q.images", s.group, qe);
    if (s.images.size() != c.g.generator_count()) throw MalformedInput("expected one image per generator of G", "Q.images");
    q_gens = s.group.generator_count();
    c.q = std::move(s);
  }
  c.rho = rho(field(j, "", "rho"), c.n, q_gens);
  c.alpha = matrix(field(j, "", "alpha"), "alpha", c.a.rank(), c.n);
  return c;
}

inline FlatCertificate flat(const Json& j) {
  only_fields(j, "", {"kind", "n", "group", "A_generators", "rho", "alpha", "phi", "phi_star", "cocycle",
                      "coboundary_witness"});
  FlatCertificate c;
  c.n = dimension(j);
  c.g = group(field(j, "", "group"), "group");
  const EnumeratedGroup ge = enumerate(c.g, "group");
  auto a = a_block(field(j, "", "A_generators"), c.g, ge);
  c.a_generators = std::move(a.generators);
  c.a = std::move(a.a);

  const Json& ps = field(j, "", "phi_star");
  only_fields(ps, "phi_star", {"group", "quotient_lifts"});
  c.phi_star = group(field(ps, "phi_star", "group"), "phi_star.group");
  const EnumeratedGroup se = enumerate(c.phi_star, "phi_star.group");
  c.quotient_lifts = elements(field(ps, "phi_star", "quotient_lifts"), "phi_star.quotient_lifts", c.g, ge);
  if (c.quotient_lifts.size() != c.phi_star.generator_count())
    throw MalformedInput("expected one lift per generator of Phi*", "phi_star.quotient_lifts");

  const Json& ph = field(j, "", "phi");
  only_fields(ph, "phi", {"group", "embedding"});
  c.phi = group(field(ph, "phi", "group"), "phi.group");
  c.phi_embedding = elements(field(ph, "phi", "embedding"), "phi.embedding", c.phi_star, se);
  if (c.phi_embedding.size() != c.phi.generator_count())
    throw MalformedInput("expected one image per generator of Phi", "phi.embedding");

  c.rho = rho(field(j, "", "rho"), c.n, c.phi_star.generator_count());
  c.alpha = matrix(field(j, "", "alpha"), "alpha", c.a.rank(), c.n);

  const Json& cj = field(j, "", "cocycle");
  only_fields(cj, "cocycle", {"order", "values"});
  const std::size_t order = count(field(cj, "cocycle", "order"), "cocycle.order");
  if (order != se.size()) throw MalformedInput("order does not match |Phi*|", "cocycle.order");
  const Json& vals = array(field(cj, "cocycle", "values"), "cocycle.values");
  if (vals.size() != order * order)
    throw MalformedInput("expected " + std::to_string(order * order) + " values", "cocycle.values");
  for (std::size_t i = 0; i < vals.size(); ++i) c.cocycle.push_back(vector(vals[i], path("cocycle.values", i), c.n));

  const Json& bj = array(field(j, "", "coboundary_witness"), "coboundary_witness");
  if (bj.size() != order) throw MalformedInput("expected one value per element of Phi*", "coboundary_witness");
  for (std::size_t i = 0; i < bj.size(); ++i)
    c.coboundary_witness.push_back(vector(bj[i], path("coboundary_witness", i), c.a.rank()));
  return c;
}

}  // namespace detail::cert_json

inline Json to_json(const TorusCertificate& c) {
  using namespace detail::cert_json;
  const EnumeratedGroup ge = c.g.enumerate();
  Json j{{"kind", "torus"}, {"n", c.n}, {"group", group_json(c.g)}, {"A_generators", a_json(c.a_generators, c.a, c.g, ge)}};
  if (c.q) {
    const EnumeratedGroup qe = c.q->group.enumerate();
    j["Q"] = Json{{"group", group_json(c.q->group)}, {"images", elements_json(c.q->images, c.q->group, qe)}};
  }
  Json rho = Json::array();
  for (const auto& m : c.rho) rho.push_back(matrix_json(m));
  j["rho"] = rho;
  j["alpha"] = matrix_json(c.alpha);
  return j;
}

inline Json to_json(const FlatCertificate& c) {
  using namespace detail::cert_json;
  const EnumeratedGroup ge = c.g.enumerate();
  const EnumeratedGroup se = c.phi_star.enumerate();
  Json j{{"kind", "flat"}, {"n", c.n}};
  j["phi"] = Json{{"group", group_json(c.phi)}, {"embedding", elements_json(c.phi_embedding, c.phi_star, se)}};
  j["phi_star"] = Json{{"group", group_json(c.phi_star)}, {"quotient_lifts", elements_json(c.quotient_lifts, c.g, ge)}};
  Json rho = Json::array();
  for (const auto& m : c.rho) rho.push_back(matrix_json(m));
  j["rho"] = rho;
  j["group"] = group_json(c.g);
  j["A_generators"] = a_json(c.a_generators, c.a, c.g, ge);
  j["alpha"] = matrix_json(c.alpha);
  Json vals = Json::array();
  for (const auto& v : c.cocycle) vals.push_back(vector_json(v));
  j["cocycle"] = Json{{"order", se.size()}, {"values", vals}};
  Json b = Json::array();
  for (const auto& v : c.coboundary_witness) b.push_back(vector_json(v));
  j["coboundary_witness"] = b;
  return j;
}

/// Structural parse with every field validated; unknown fields are rejected. Throws
/// MalformedInput (located by field path) or BoundExceeded for groups too large to enumerate.
inline Certificate parse_certificate(const Json& j) {
  using namespace detail::cert_json;
  if (!j.is_object()) throw MalformedInput("certificate must be a JSON object");
  const Json& kind = field(j, "", "kind");
  if (kind == "torus") return torus(j);
  if (kind == "flat") return flat(j);
  throw MalformedInput("expected \"torus\" or \"flat\"", "kind");
}

inline Certificate parse_certificate_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw MalformedInput("cannot open file", file);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what(), file);
  }
  try {
    return parse_certificate(j);
  } catch (const MalformedInput& e) {
    throw MalformedInput(e.what(), file);
  }
}

inline Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checklist) {
    Json x{{"name", c.name}, {"status", to_string(c.status)}};
    if (!c.detail.empty()) x["detail"] = c.detail;
    checks.push_back(x);
  }
  return Json{{"kind", r.kind}, {"verdict", r.accepted() ? "accepted" : "rejected"}, {"checklist", checks},
              {"witnesses", r.witnesses}};
}

inline std::string format_report(const VerificationReport& r) {
  std::ostringstream os;
  os << r.kind << " certificate: " << (r.accepted() ? "accepted" : "rejected") << '\n';
  for (const auto& c : r.checklist) {
    os << "  [" << to_string(c.status) << "] " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n';
  }
  for (const auto& [k, v] : r.witnesses) os << "  " << k << " = " << v << '\n';
  return os.str();
}

}  // namespace flatact
