#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "hvi/bem.hpp"

namespace hvi {

namespace {

constexpr std::array<char, 8> kMagic = {'b', 'e', 'm', 'o', 'p', 's', 'v', '1'};

template <class T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw BemError("bemops: truncated input");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

}  // namespace

void write_bemops(std::ostream& out, const Mat& A) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(A.rows()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(A.cols()));
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(A(i, j)));
  if (!out) throw BemError("bemops: write failed");
}

Mat read_bemops(std::istream& in) {
  std::array<char, 8> magic;
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw BemError("bemops: bad magic");
  const auto rows = get_le<std::uint32_t>(in);
  const auto cols = get_le<std::uint32_t>(in);
  Mat A(rows, cols);
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = std::bit_cast<double>(get_le<std::uint64_t>(in));
  if (in.peek() != std::char_traits<char>::eof()) throw BemError("bemops: trailing bytes after matrix data");
  return A;
}

}  // namespace hvi
