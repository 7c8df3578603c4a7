#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "khlab/sumset.hpp"

namespace khlab {

using FixtureValues = std::map<std::string, std::string>;

struct Fixture {
  std::string id;
  std::string description;
  std::vector<std::pair<std::string, std::string>> expected;  // (quantity, value)
  std::function<FixtureValues(const FoldOptions&)> compute;
};

struct FixtureCheck {
  std::string quantity;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct FixtureResult {
  std::string id;
  std::string description;
  std::vector<FixtureCheck> checks;
  std::string error;  // set when the computation threw
  bool pass = false;
};

/// The embedded corpus of worked examples.
std::vector<Fixture> builtin_fixtures();

FixtureResult run_fixture(const Fixture& f, const FoldOptions& opts = {});

/// Runs the fixtures whose id contains `filter`, in corpus order. Independent
/// fixtures run on up to `threads` workers.
std::vector<FixtureResult> run_fixtures(const std::vector<Fixture>& corpus,
                                        const std::string& filter = "",
                                        const FoldOptions& opts = {}, unsigned threads = 1);

std::string render_fixture_table(const std::vector<FixtureResult>& results);

}  // namespace khlab
