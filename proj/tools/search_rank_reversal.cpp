// Searches small palette judgment grids for a hierarchy where adding a copy
// of the best alternative reverses two originals in distributive mode, and
// prints the first hit as a model document for data/rank_reversal.json.

#include <CLI11.hpp>

#include <iostream>

#include "reversal_search.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exhaustive search for a distributive-mode rank reversal"};
  ahp::tools::ReversalSearchOptions opts;
  app.add_option("--criteria", opts.criteria, "Number of criteria")->check(CLI::Range(1, 4));
  app.add_option("--alternatives", opts.alternative_counts, "Alternative counts to try, in order")
      ->check(CLI::Range(2, 5));
  app.add_option("--max-cases", opts.max_cases, "Give up after this many grids");
  CLI11_PARSE(app, argc, argv);

  const auto hit = ahp::tools::search_rank_reversal(opts);
  if (!hit) {
    std::cerr << "no reversal within the search bounds\n";
    return 1;
  }
  std::cerr << "found after " << hit->cases_examined << " grids\n";
  std::cout << ahp::tools::to_fixture(*hit).dump(2) << "\n";
  return 0;
}
