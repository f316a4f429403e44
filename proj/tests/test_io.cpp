#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "perronkit/error.hpp"
#include "perronkit/fixtures.hpp"
#include "perronkit/random.hpp"
#include "perronkit/tensor_io.hpp"
#include "perronkit/verification.hpp"

using namespace perronkit;

namespace {

NonnegativeTensor parse(const std::string& text) {
  std::istringstream in(text);
  return read_tensor(in);
}

int parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("reads the sparse text format") {
  const auto a = parse("# comment\n3 3\n1 2 3 1\n2 1 3 1\n\n# another\n3 3 3 1.0\n");
  CHECK(a == fixtures::coupled_triple());

  const auto zero = parse("2 4\n");
  CHECK(zero.shape() == TensorShape{2, 4});
  CHECK(zero.nnz() == 0);

  const auto dropped = parse("2 2\n1 1 0\n2 2 0.5e1\n");
  CHECK(dropped.nnz() == 1);
  CHECK(dropped.value(0) == 5.0);
}

TEST_CASE("parse errors carry the offending line") {
  CHECK(parse_error_line("") == 0);
  CHECK(parse_error_line("# only comments\n") == 1);
  CHECK(parse_error_line("3\n") == 1);
  CHECK(parse_error_line("1 3\n") == 1);
  CHECK(parse_error_line("3 2\n1 1 1 1\n1 1 3 1\n") == 3);
  CHECK(parse_error_line("3 2\n1 1 0 1\n") == 2);
  CHECK(parse_error_line("3 2\n1 1 1\n") == 2);
  CHECK(parse_error_line("3 2\n1 1 1 -2\n") == 2);
  CHECK(parse_error_line("3 2\n1 1 1 abc\n") == 2);
  CHECK(parse_error_line("3 2\n1 x 1 1\n") == 2);
  CHECK(parse_error_line("3 2\n1 1 1 inf\n") == 2);
  CHECK(parse_error_line("3 2\n1 1 1 1\n\n1 1 1 2\n") == 4);
}

TEST_CASE("write then read is bit exact") {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const TensorShape shape{2 + static_cast<int>(rng.below(3)), 1 + static_cast<int>(rng.below(5))};
    const auto a = verification::random_tensor(rng, shape, 0.4);
    std::stringstream buffer;
    write_tensor(buffer, a);
    CHECK(read_tensor(buffer) == a);
  }
  for (double v : {0.1, 1.0 / 3.0, 5e-324, 1.7976931348623157e308, 3.1253}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "perronkit_test_io";
  std::filesystem::create_directories(dir);
  const auto path = dir / "chain.tns";
  write_tensor_file(path, fixtures::four_block_chain());
  CHECK(read_tensor_file(path) == fixtures::four_block_chain());
  CHECK_THROWS_AS(read_tensor_file(dir / "missing.tns"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("shipped data files match the built-in fixtures byte for byte") {
  const std::filesystem::path data(PERRONKIT_DATA_DIR);
  std::ostringstream e61;
  write_tensor(e61, fixtures::coupled_triple());
  CHECK(slurp(data / "example61.tns") == e61.str());
  std::ostringstream e63;
  write_tensor(e63, fixtures::four_block_chain());
  CHECK(slurp(data / "example63.tns") == e63.str());
}
