// Writes the bundled synthetic dataset (fixtures/small). Regenerate with:
//   make_fixture --pairs 500 --seed 20200505 --out fixtures/small

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "dexnet/report.hpp"
#include "dexnet/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"generate a schema-faithful synthetic dataset"};
  std::size_t pairs = 500;
  std::uint64_t seed = 20200505;
  std::string out = "fixtures/small";
  app.add_option("--pairs", pairs, "number of pools");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--out", out, "output directory");
  CLI11_PARSE(app, argc, argv);

  try {
    dexnet::FixtureFiles files = dexnet::make_fixture_dataset(pairs, seed);
    std::filesystem::path dir(out);
    std::filesystem::create_directories(dir);
    dexnet::write_text_file(dir / "pairs.jsonl", files.pairs_jsonl);
    dexnet::write_text_file(dir / "pair_days.jsonl", files.pair_days_jsonl);
    dexnet::write_text_file(dir / "token_days.jsonl", files.token_days_jsonl);
    dexnet::write_text_file(dir / "reference_prices.csv",
                            files.reference_prices_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
