#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tailix {

/// Where a sample came from.
struct Provenance {
  enum class Kind { none, seed, file };
  Kind kind = Kind::none;
  std::uint64_t seed = 0;
  std::string path;

  static Provenance from_seed(std::uint64_t seed) {
    return {Kind::seed, seed, {}};
  }
  static Provenance from_file(std::string path) {
    return {Kind::file, 0, std::move(path)};
  }
};

/// Immutable collection of at least two positive, finite observations.
///
/// Copies share storage. The descending order statistics are computed on first
/// request and cached; the cache is safe to populate from several threads.
class Sample {
 public:
  explicit Sample(std::vector<double> values, Provenance provenance = {});

  /// Reads one decimal per line; blank lines and lines starting with '#' are
  /// skipped. Errc::parse names the offending line.
  static Sample parse(std::istream& in, const std::string& source = "<input>");
  static Sample read_file(const std::string& path);

  std::size_t size() const noexcept;
  std::span<const double> values() const noexcept;
  const Provenance& provenance() const noexcept;

  /// All values, largest first.
  std::span<const double> sorted_descending() const;

  /// The `count` largest values, largest first. Uses partial selection unless
  /// the full sort is already cached.
  std::vector<double> top(std::size_t count) const;

  /// Every value multiplied by `factor` (> 0).
  Sample scaled(double factor) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

}  // namespace tailix
