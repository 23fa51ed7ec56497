#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

struct FixtureRow {
  double a;
  double b;
  double value;
};

inline std::vector<FixtureRow> load_fixture(const std::string& name) {
  std::ifstream in(std::string(WHANKEL_TEST_DATA) + "/" + name);
  std::vector<FixtureRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    FixtureRow row{};
    ss >> row.a >> row.b >> row.value;
    rows.push_back(row);
  }
  return rows;
}
