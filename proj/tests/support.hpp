#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "beefi/error.hpp"
#include "beefi/landscape.hpp"

namespace beefi::test {

inline CellGrid grid_of(std::initializer_list<const char*> rows, double cell_size = 1.0) {
  std::string text = "# cell_size_m=" + std::to_string(cell_size) + "\n";
  for (const char* r : rows) text += std::string(r) + "\n";
  return parse_map(text);
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) { return std::string(BEEFI_DATA_DIR) + "/" + name; }

#define EXPECT_THROW_CODE(stmt, expected)                                   \
  do {                                                                      \
    try {                                                                   \
      stmt;                                                                 \
      ADD_FAILURE() << "expected error " << (expected);                     \
    } catch (const ::beefi::Error& e) {                                     \
      EXPECT_EQ(e.code(), (expected)) << e.what();                          \
    }                                                                       \
  } while (0)

}  // namespace beefi::test
