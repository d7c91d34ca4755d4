#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wcdsc/cli_io.hpp"
#include "wcdsc/support_model.hpp"

namespace wcdsc::testkit {

inline SupportSet load_fixture(const std::string& name) {
  return cli::parse_support_file(std::string(WCDSC_FIXTURE_DIR) + "/" + name).set;
}

inline SupportSet fixture_a() { return load_fixture("fixtureA.dsc"); }
inline SupportSet fixture_b() { return load_fixture("fixtureB.dsc"); }

inline SupportSet pairs(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::vector<SupportEntry> entries;
  for (const auto& [a, b] : rows) entries.push_back({{Label(a), Label(b)}, {}});
  return SupportSet::build(entries);
}

inline SupportSet rows_of(const std::vector<std::vector<std::string>>& rows) {
  std::vector<SupportEntry> entries;
  for (const auto& row : rows) {
    SupportEntry e;
    for (const auto& v : row) e.values.emplace_back(v);
    entries.push_back(std::move(e));
  }
  return SupportSet::build(entries);
}

inline DataVector vec(const std::vector<std::string>& values) {
  DataVector x;
  for (const auto& v : values) x.values.emplace_back(v);
  return x;
}

}  // namespace wcdsc::testkit
