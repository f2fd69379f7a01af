#pragma once

#include "flatact/certificates.hpp"
#include "flatact/cohomology.hpp"
#include "flatact/screening.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace flatact::cli {

enum ExitCode : int { ok = 0, negative = 1, malformed = 2, bound_exceeded = 3, internal = 4 };

enum class Format { text, json };

struct CommandConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  Format format = Format::text;
  std::size_t coset_limit = 4000000;
  std::size_t node_limit = 1000000000;
  std::size_t order_limit = 0;  // 0: the command's own default
  std::string catalog;
  // screen / a9-chain
  int range_lo = 3, range_hi = 24;
  // low-index / epi-search / a9-chain
  std::size_t max_index = 16;
  std::vector<std::size_t> index_filter{1, 2, 4, 8, 16};
  std::string target = "alternating:9";
  std::string automorphisms;
  // h2 / jordan
  std::string coefficients;
  std::string cocycle;
  std::string bound = "1";
  std::size_t dimension = 0;
};

namespace detail {

inline std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open file", path);
  return in;
}

// Re-throws input errors with the file name prepended.
template <class F>
auto located(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const MalformedInput& e) {
    if (e.location().rfind(path, 0) == 0) throw;
    throw MalformedInput(e.what(), path);
  } catch (const BoundExceeded&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(e.what(), path);
  }
}

inline IntMatrix load_matrix(const std::string& path) {
  auto in = open(path);
  return located(path, [&] {
    IntMatrix m = IntMatrix::parse(in);
    if (in >> std::ws, !in.eof()) throw MalformedInput("trailing data after the matrix", path);
    return m;
  });
}

inline FiniteGroup load_group(const std::string& path) {
  auto in = open(path);
  return located(path, [&] { return parse_group(in); });
}

// Consecutive matrices in the matrix text format.
inline std::vector<IntMatrix> load_matrices(const std::string& path) {
  auto in = open(path);
  return located(path, [&] {
    std::vector<IntMatrix> out;
    while (in >> std::ws, !in.eof()) out.push_back(IntMatrix::parse(in));
    return out;
  });
}

/// "Z^n" for a lattice, "Z/d1xZ/d2x..." for a finite group given by invariant factors, "0" for
/// the trivial group.
inline AbelianGroup parse_coefficients(const std::string& s, const std::string& where) {
  if (s == "0") return FinAbGroup(std::vector<Integer>{});
  if (s.rfind("Z^", 0) == 0) {
    try {
      std::size_t used = 0;
      const long n = std::stol(s.substr(2), &used);
      if (used + 2 == s.size() && n >= 0) return Lattice{static_cast<std::size_t>(n)};
    } catch (const std::exception&) {
    }
    throw MalformedInput("bad lattice rank in '" + s + "'", where);
  }
  std::vector<Integer> factors;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t end = std::min(s.find('x', pos), s.size());
    const std::string part = s.substr(pos, end - pos);
    if (part.rfind("Z/", 0) != 0 || part.size() < 3 ||
        part.find_first_not_of("0123456789", 2) != std::string::npos)
      throw MalformedInput("expected 'Z^n' or 'Z/d1xZ/d2...', got '" + s + "'", where);
    factors.emplace_back(part.substr(2));
    pos = end + 1;
  }
  if (factors.empty()) throw MalformedInput("empty coefficient description", where);
  try {
    return FinAbGroup(std::move(factors));
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(e.what(), where);
  }
}

inline std::string strip_comment(const std::string& line) {
  std::string s = line.substr(0, line.find('#'));
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

/// Cocycle file: "cocycle <|Q|> <coeff-desc>", then |Q|^2 lines c(g,h), pairs in order
/// (0,0), (0,1), ..., element indices as in the enumerated group.
inline std::pair<AbelianGroup, std::vector<IntVector>> load_cocycle(const std::string& path, std::size_t q) {
  auto in = open(path);
  std::string line;
  std::size_t lineno = 0;
  auto at = [&] { return path + ":" + std::to_string(lineno); };
  std::string header;
  while (header.empty() && std::getline(in, line)) {
    ++lineno;
    header = strip_comment(line);
  }
  std::istringstream hs(header);
  std::string word, desc, extra;
  long long order = -1;
  if (!(hs >> word >> order >> desc) || word != "cocycle" || (hs >> extra))
    throw MalformedInput("expected header 'cocycle <|Q|> <coeff-desc>'", at());
  if (order != static_cast<long long>(q))
    throw MalformedInput("header says |Q| = " + std::to_string(order) + ", group has order " + std::to_string(q), at());
  AbelianGroup coeff = parse_coefficients(desc, at());
  const std::size_t r = coordinate_count(coeff);
  std::vector<IntVector> values;
  while (values.size() < q * q && std::getline(in, line)) {
    ++lineno;
    const std::string s = strip_comment(line);
    if (s.empty() && r > 0) continue;
    std::istringstream ls(s);
    IntVector v;
    std::string tok;
    while (ls >> tok) {
      try {
        v.emplace_back(tok);
      } catch (const std::invalid_argument&) {
        throw MalformedInput("not an integer: '" + tok + "'", at());
      }
    }
    if (v.size() != r)
      throw MalformedInput("expected " + std::to_string(r) + " entries for pair (" + std::to_string(values.size() / q) +
                               "," + std::to_string(values.size() % q) + "), got " + std::to_string(v.size()),
                           at());
    values.push_back(std::move(v));
  }
  if (values.size() != q * q)
    throw MalformedInput("expected " + std::to_string(q * q) + " pair lines, got " + std::to_string(values.size()), path);
  while (std::getline(in, line)) {
    ++lineno;
    if (!strip_comment(line).empty()) throw MalformedInput("trailing data after the last pair", at());
  }
  return {std::move(coeff), std::move(values)};
}

inline std::string factors_string(const FinAbGroup& a) { return a.rank() ? a.to_string() : "0"; }

inline Json integers_json(const std::vector<Integer>& xs) {
  Json j = Json::array();
  for (const auto& x : xs) j.push_back(x.get_str());
  return j;
}

inline Json matrix_json(const IntMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).get_str());
    j.push_back(row);
  }
  return j;
}

inline std::string perm_string(const Permutation& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.degree(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s + "]";
}

inline Json perm_json(const Permutation& p) {
  Json j = Json::array();
  for (std::size_t i = 0; i < p.degree(); ++i) j.push_back(p[i]);
  return j;
}

/// "alternating:n", "symmetric:n", or a path to a group file with a permutation backing.
inline PermGroup parse_perm_group(const std::string& spec) {
  for (const char* kind : {"alternating:", "symmetric:"}) {
    const std::string k = kind;
    if (spec.rfind(k, 0) == 0) {
      std::size_t used = 0;
      long n = -1;
      try {
        n = std::stol(spec.substr(k.size()), &used);
      } catch (const std::exception&) {
      }
      if (n < 1 || used + k.size() != spec.size()) throw MalformedInput("bad degree in '" + spec + "'", "--target");
      return k == "symmetric:" ? PermGroup::symmetric(static_cast<std::size_t>(n))
                               : PermGroup::alternating(static_cast<std::size_t>(n));
    }
  }
  const FiniteGroup g = load_group(spec);
  if (!g.is_permutation_group()) throw MalformedInput("expected a permutation group", spec);
  return g.permutations();
}

inline ImfCatalog load_catalog(const CommandConfig& c, const std::string& default_path) {
  return ImfCatalog::load(c.catalog.empty() ? default_path : c.catalog);
}

inline void require_inputs(const CommandConfig& c, std::size_t lo, std::size_t hi) {
  if (c.inputs.size() < lo || c.inputs.size() > hi)
    throw MalformedInput("expected " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi)) +
                             " input files, got " + std::to_string(c.inputs.size()),
                         c.subcommand);
}

}  // namespace detail

struct Paths {
  std::string catalog;  // default catalogue
  std::string e7;       // default E7 presentation
};

inline int run_snf(const CommandConfig& c, std::ostream& out) {
  detail::require_inputs(c, 1, 1);
  const IntMatrix m = detail::load_matrix(c.inputs[0]);
  const auto s = smith_normal_form(m);
  if (c.format == Format::json) {
    out << Json{{"invariant_factors", detail::integers_json(s.diagonal())},
                {"rank", s.rank()},
                {"d", detail::matrix_json(s.d)},
                {"u", detail::matrix_json(s.u)},
                {"v", detail::matrix_json(s.v)}}
               .dump(2)
        << '\n';
  } else {
    out << "invariant factors: " << format_integer_list(s.diagonal()) << "\nrank: " << s.rank() << "\nd:\n"
        << s.d << "u:\n"
        << s.u << "v:\n"
        << s.v;
  }
  return ok;
}

/// h2 <group> <matrices>: H^2 of the group with coefficients given by --coefficients (default
/// Z^n, n from the matrices), or by the header of --cocycle, whose class is then reported.
inline int run_h2(const CommandConfig& c, std::ostream& out) {
  detail::require_inputs(c, 2, 2);
  const FiniteGroup fg = detail::load_group(c.inputs[0]);
  const std::size_t limit = c.order_limit ? c.order_limit : 16;
  CohomologyBounds bounds;
  bounds.max_group_order = limit;
  if (fg.order() > static_cast<unsigned long>(limit))
    throw BoundExceeded("h2: group order " + fg.order().get_str() + " exceeds bound " + std::to_string(limit));
  const EnumeratedGroup q = fg.enumerate(limit);
  const auto mats = detail::load_matrices(c.inputs[1]);
  if (mats.size() != q.generators().size())
    throw MalformedInput("expected " + std::to_string(q.generators().size()) + " matrices, one per generator, got " +
                             std::to_string(mats.size()),
                         c.inputs[1]);
  std::optional<std::pair<AbelianGroup, std::vector<IntVector>>> cocycle;
  if (!c.cocycle.empty()) cocycle = detail::load_cocycle(c.cocycle, q.size());
  AbelianGroup coeff = Lattice{mats.empty() ? 0 : mats[0].rows()};
  if (!c.coefficients.empty()) coeff = detail::parse_coefficients(c.coefficients, "--coefficients");
  if (cocycle) {
    if (!c.coefficients.empty() && !(cocycle->first == coeff))
      throw MalformedInput("coefficients differ from --coefficients", c.cocycle);
    coeff = cocycle->first;
  }
  if (mats.empty() && q.size() > 1) throw MalformedInput("no matrices", c.inputs[1]);
  const ZQModule m = detail::located(c.inputs[1], [&] { return ZQModule(q, coeff, mats); });
  const auto h = h2(m, bounds);
  Json j{{"group_order", q.size()}, {"module_rank", m.rank()},
         {"h2", detail::integers_json(h.group().invariant_factors())}};
  std::string text = "H^2 = " + detail::factors_string(h.group()) + "\n";
  int code = ok;
  if (cocycle) {
    const Cocycle2 z = detail::located(c.cocycle, [&] { return Cocycle2(m, cocycle->second); });
    if (auto d = z.cocycle_defect()) {
      const std::string where = "(" + std::to_string((*d)[0]) + "," + std::to_string((*d)[1]) + "," +
                                std::to_string((*d)[2]) + ")";
      j["cocycle"] = Json{{"is_cocycle", false}, {"defect", *d}};
      text += "cocycle: rejected, identity fails at " + where + "\n";
      code = negative;
    } else {
      const auto coords = h.coordinates(z);
      j["cocycle"] = Json{{"is_cocycle", true}, {"class", detail::integers_json(coords)}};
      text += "cocycle class: " + format_integer_list(coords) + "\n";
    }
  }
  if (c.format == Format::json)
    out << j.dump(2) << '\n';
  else
    out << text;
  return code;
}

inline int run_verify(const CommandConfig& c, std::ostream& out, bool torus) {
  detail::require_inputs(c, 1, 1);
  const std::string& path = c.inputs[0];
  const Certificate cert = parse_certificate_file(path);
  VerificationReport r;
  if (torus) {
    if (!std::holds_alternative<TorusCertificate>(cert))
      throw MalformedInput("verify-torus needs a torus certificate", path + ": kind");
    r = verify_torus_certificate(std::get<TorusCertificate>(cert));
  } else {
    if (!std::holds_alternative<FlatCertificate>(cert))
      throw MalformedInput("verify-flat needs a flat certificate", path + ": kind");
    r = verify_flat_certificate(std::get<FlatCertificate>(cert));
  }
  if (c.format == Format::json)
    out << to_json(r).dump(2) << '\n';
  else
    out << format_report(r);
  return r.accepted() ? ok : negative;
}

/// jordan <group> --bound B: an abelian normal subgroup of index at most B, or none.
inline int run_jordan(const CommandConfig& c, std::ostream& out) {
  detail::require_inputs(c, 1, 1);
  JordanQuery q;
  q.n = c.dimension;
  q.g = detail::load_group(c.inputs[0]);
  try {
    q.bound = Integer(c.bound);
  } catch (const std::invalid_argument&) {
    throw MalformedInput("not an integer: '" + c.bound + "'", "--bound");
  }
  if (q.bound < 1) throw MalformedInput("must be at least 1", "--bound");
  const std::size_t limit = c.order_limit ? c.order_limit : 20000;
  const auto w = jordan_witness(q, limit);
  Json j{{"group_order", q.g.order().get_str()}, {"bound", q.bound.get_str()}};
  std::ostringstream text;
  text << "|G| = " << q.g.order().get_str() << ", bound " << q.bound.get_str() << '\n';
  if (w) {
    const EnumeratedGroup e = q.g.enumerate(limit);
    const Json gens = flatact::detail::cert_json::elements_json(w->subgroup.generators, q.g, e);
    j["witness"] = Json{{"index", w->index}, {"order", w->subgroup.order()}, {"generators", gens}};
    text << "witness: abelian normal subgroup of order " << w->subgroup.order() << ", index " << w->index << '\n'
         << "generators: " << gens.dump() << '\n';
  } else {
    j["witness"] = nullptr;
    text << "witness: none\n";
  }
  out << (c.format == Format::json ? j.dump(2) + "\n" : text.str());
  return w ? ok : negative;
}

inline int run_screen(const CommandConfig& c, std::ostream& out, const Paths& paths) {
  detail::require_inputs(c, 0, 0);
  const ImfCatalog cat = detail::load_catalog(c, paths.catalog);
  const auto hits = screen_dimensions(c.range_lo, c.range_hi, cat);
  if (c.format == Format::json) {
    Json hj = Json::array();
    for (const auto& h : hits)
      hj.push_back(Json{{"dimension", h.dimension}, {"partition", h.partition}, {"orders", detail::integers_json(h.orders)}});
    Json j{{"range", {c.range_lo, c.range_hi}}, {"hits", hj}};
    if (c.range_lo <= 7 && 7 <= c.range_hi) j["residues7"] = detail::integers_json(residues(cat, 7, Integer(2903040)));
    if (c.range_lo <= 8 && 8 <= c.range_hi) j["residues8"] = detail::integers_json(residues(cat, 8, Integer(696729600)));
    out << j.dump(2) << '\n';
  } else {
    out << format_screening(hits, cat, c.range_lo, c.range_hi);
  }
  return hits.empty() ? negative : ok;
}

inline int run_low_index(const CommandConfig& c, std::ostream& out) {
  detail::require_inputs(c, 1, 1);
  const FpGroup g = FpGroup::load(c.inputs[0]);
  LowIndexOptions opts;
  opts.node_limit = c.node_limit;
  const auto classes = low_index_subgroups(g, c.max_index, opts);
  Json arr = Json::array();
  std::ostringstream text;
  text << "subgroup classes of index <= " << c.max_index << ": " << classes.size() << '\n';
  for (const auto& cl : classes) {
    Json gens = Json::array();
    for (const auto& w : cl.generators) gens.push_back(format_word(w));
    arr.push_back(Json{{"index", cl.index()}, {"generators", gens}});
    text << "  index " << cl.index() << ": " << cl.generators.size() << " Schreier generators\n";
  }
  if (c.format == Format::json)
    out << Json{{"max_index", c.max_index}, {"classes", arr}}.dump(2) << '\n';
  else
    out << text.str();
  return ok;
}

inline int run_epi_search(const CommandConfig& c, std::ostream& out) {
  detail::require_inputs(c, 1, 1);
  const FpGroup g = FpGroup::load(c.inputs[0]);
  const PermGroup target = detail::parse_perm_group(c.target);
  EpimorphismOptions opts;
  opts.node_limit = c.node_limit;
  if (!c.automorphisms.empty()) opts.automorphisms = detail::parse_perm_group(c.automorphisms);
  if (c.order_limit) opts.automorphism_order_limit = c.order_limit;
  EpimorphismSearchStats stats;
  const auto found = epimorphism_search(g, target, opts, &stats);
  Json arr = Json::array();
  std::ostringstream text;
  text << "surjections onto a group of order " << target.order().get_str() << ", up to automorphisms: " << found.size()
       << " (" << stats.nodes << " nodes)\n";
  for (const auto& e : found) {
    Json im = Json::array();
    text << " ";
    for (const auto& p : e.images) {
      im.push_back(detail::perm_json(p));
      text << ' ' << detail::perm_string(p);
    }
    text << '\n';
    arr.push_back(im);
  }
  if (c.format == Format::json)
    out << Json{{"target_order", target.order().get_str()}, {"nodes", stats.nodes}, {"epimorphisms", arr}}.dump(2) << '\n';
  else
    out << text.str();
  return found.empty() ? negative : ok;
}

/// Exit 1 when the chain ends with no A9 action, matching epi-search's "none".
inline int run_a9_chain(const CommandConfig& c, std::ostream& out, const Paths& paths) {
  detail::require_inputs(c, 0, 1);
  const ImfCatalog cat = detail::load_catalog(c, paths.catalog);
  const FpGroup e7 = FpGroup::load(c.inputs.empty() ? paths.e7 : c.inputs[0]);
  A9ChainOptions o;
  o.range_lo = c.range_lo;
  o.range_hi = c.range_hi;
  o.max_index = c.max_index;
  o.index_filter = c.index_filter;
  o.low_index.node_limit = c.node_limit;
  o.epimorphism.node_limit = c.node_limit;
  o.cosets.coset_limit = c.coset_limit;
  const auto r = a9_chain(cat, e7, o);
  if (c.format == Format::json) {
    Json fj = Json::array();
    for (const auto& f : r.filtered)
      fj.push_back(Json{{"index", f.index},
                        {"order", f.order.get_str()},
                        {"generators", f.generators},
                        {"relators", f.relators},
                        {"epimorphisms", f.epimorphisms},
                        {"nodes", f.search_nodes}});
    Json hj = Json::array();
    for (const auto& h : r.hits)
      hj.push_back(Json{{"dimension", h.dimension}, {"partition", h.partition}, {"orders", detail::integers_json(h.orders)}});
    out << Json{{"hits", hj},
                {"survivor", r.survivor.get_str()},
                {"parabolic_indices", r.parabolic},
                {"weyl_order", r.weyl_order.get_str()},
                {"classes", r.classes_total},
                {"filtered", fj},
                {"verdict", r.no_a9_action ? "none" : "surjection"}}
               .dump(2)
        << '\n';
  } else {
    out << format_a9_chain(r, cat, o);
  }
  return r.no_a9_action ? negative : ok;
}

/// Dispatches and maps exceptions to exit codes; diagnostics go to `err`.
inline int run(const CommandConfig& c, std::ostream& out, std::ostream& err, const Paths& paths) {
  try {
    if (c.coset_limit == 0 || c.node_limit == 0) throw MalformedInput("bounds must be positive", c.subcommand);
    if (c.subcommand == "snf") return run_snf(c, out);
    if (c.subcommand == "h2") return run_h2(c, out);
    if (c.subcommand == "verify-torus") return run_verify(c, out, true);
    if (c.subcommand == "verify-flat") return run_verify(c, out, false);
    if (c.subcommand == "jordan") return run_jordan(c, out);
    if (c.subcommand == "screen") return run_screen(c, out, paths);
    if (c.subcommand == "low-index") return run_low_index(c, out);
    if (c.subcommand == "epi-search") return run_epi_search(c, out);
    if (c.subcommand == "a9-chain") return run_a9_chain(c, out, paths);
    throw MalformedInput("unknown subcommand '" + c.subcommand + "'");
  } catch (const BoundExceeded& e) {
    err << "error: bound exceeded: " << e.what() << '\n';
    return bound_exceeded;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return malformed;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return internal;
  }
}

}  // namespace flatact::cli
