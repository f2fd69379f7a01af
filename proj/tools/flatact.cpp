#include "flatact/cli/commands.hpp"

#include <CLI11.hpp>

#ifndef FLATACT_DATA_DIR
#define FLATACT_DATA_DIR "data"
#endif

namespace {

using flatact::cli::CommandConfig;

// "lo..hi" or a single k.
void parse_range(const std::string& s, CommandConfig& c) {
  const auto dots = s.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      c.range_lo = c.range_hi = std::stoi(s, &used);
      if (used == s.size()) return;
    } else {
      c.range_lo = std::stoi(s.substr(0, dots), &used);
      if (used == dots) {
        const std::string hi = s.substr(dots + 2);
        c.range_hi = std::stoi(hi, &used);
        if (used == hi.size() && c.range_lo >= 1 && c.range_lo <= c.range_hi) return;
      }
    }
  } catch (const std::exception&) {
  }
  throw flatact::MalformedInput("expected 'lo..hi' with 1 <= lo <= hi, got '" + s + "'", "--range");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flatact: finite group actions on tori and flat manifolds"};
  app.require_subcommand(1, 1);
  CommandConfig c;
  std::string format = "text", range;

  auto common = [&](CLI::App* s) {
    s->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  };
  auto bounds = [&](CLI::App* s) {
    s->add_option("--coset-limit", c.coset_limit, "maximum live cosets")->check(CLI::PositiveNumber);
    s->add_option("--node-limit", c.node_limit, "maximum search nodes")->check(CLI::PositiveNumber);
  };

  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf->add_option("matrix", c.inputs, "matrix file")->required()->check(CLI::ExistingFile);

  auto* h2 = app.add_subcommand("h2", "second cohomology of a finite group with module coefficients");
  h2->add_option("files", c.inputs, "group file, then module matrices (one per generator)")
      ->required()
      ->expected(2)
      ->check(CLI::ExistingFile);
  h2->add_option("--coefficients", c.coefficients, "Z^n or Z/d1xZ/d2x...");
  h2->add_option("--cocycle", c.cocycle, "cocycle file whose class to report")->check(CLI::ExistingFile);
  h2->add_option("--order-limit", c.order_limit, "largest group order for the bar resolution")
      ->check(CLI::PositiveNumber);

  auto* vt = app.add_subcommand("verify-torus", "check a torus certificate");
  vt->add_option("certificate", c.inputs)->required()->check(CLI::ExistingFile);
  auto* vf = app.add_subcommand("verify-flat", "check a flat-manifold certificate");
  vf->add_option("certificate", c.inputs)->required()->check(CLI::ExistingFile);

  auto* jordan = app.add_subcommand("jordan", "abelian normal subgroup of bounded index");
  jordan->add_option("group", c.inputs)->required()->check(CLI::ExistingFile);
  jordan->add_option("--bound", c.bound, "index bound")->required();
  jordan->add_option("--dimension", c.dimension, "dimension n the bound belongs to");
  jordan->add_option("--order-limit", c.order_limit, "largest group order to enumerate")->check(CLI::PositiveNumber);

  auto* screen = app.add_subcommand("screen", "order-level screening against the IMF catalogue");
  screen->add_option("--range", range, "dimensions lo..hi")->default_str("3..24");
  screen->add_option("--catalog", c.catalog, "catalogue file")->check(CLI::ExistingFile);

  auto* li = app.add_subcommand("low-index", "conjugacy classes of subgroups of bounded index");
  li->add_option("presentation", c.inputs)->required()->check(CLI::ExistingFile);
  li->add_option("--max-index", c.max_index, "largest index")->default_val(16)->check(CLI::PositiveNumber);

  auto* epi = app.add_subcommand("epi-search", "surjections from a presented group onto a permutation group");
  epi->add_option("presentation", c.inputs)->required()->check(CLI::ExistingFile);
  epi->add_option("--target", c.target, "alternating:n, symmetric:n or a group file")->default_val("alternating:9");
  epi->add_option("--automorphisms", c.automorphisms, "group acting on the target by conjugation");
  epi->add_option("--order-limit", c.order_limit, "largest automorphism group order")->check(CLI::PositiveNumber);

  auto* chain = app.add_subcommand("a9-chain", "screening followed by the dimension-7 A9 chain");
  chain->add_option("presentation", c.inputs, "E7 presentation (default: shipped)")->check(CLI::ExistingFile);
  chain->add_option("--range", range, "dimensions lo..hi")->default_str("3..24");
  chain->add_option("--catalog", c.catalog, "catalogue file")->check(CLI::ExistingFile);
  chain->add_option("--max-index", c.max_index, "largest index")->default_val(16)->check(CLI::PositiveNumber);
  chain->add_option("--index-filter", c.index_filter, "indices kept for the surjection search")->delimiter(',');

  for (auto* s : {snf, h2, vt, vf, jordan, screen, li, epi, chain}) common(s);
  for (auto* s : {li, epi, chain}) bounds(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return flatact::cli::malformed;
  }

  c.subcommand = app.get_subcommands().front()->get_name();
  c.format = format == "json" ? flatact::cli::Format::json : flatact::cli::Format::text;
  if (!range.empty()) {
    try {
      parse_range(range, c);
    } catch (const flatact::MalformedInput& e) {
      std::cerr << "error: " << e.what() << '\n';
      return flatact::cli::malformed;
    }
  }
  const flatact::cli::Paths paths{std::string(FLATACT_DATA_DIR) + "/imf_orders.txt",
                                  std::string(FLATACT_DATA_DIR) + "/presentations/e7.pres"};
  return flatact::cli::run(c, std::cout, std::cerr, paths);
}
