#include "tailix/sample.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <mutex>
#include <sstream>

#include "tailix/error.hpp"

namespace tailix {

struct Sample::Data {
  std::vector<double> values;
  Provenance provenance;
  mutable std::once_flag sorted_once;
  mutable std::vector<double> sorted;
  mutable std::atomic<bool> sorted_ready{false};
};

std::size_t Sample::size() const noexcept { return data_->values.size(); }
std::span<const double> Sample::values() const noexcept { return data_->values; }
const Provenance& Sample::provenance() const noexcept { return data_->provenance; }

Sample::Sample(std::vector<double> values, Provenance provenance) {
  if (values.size() < 2) {
    throw Error(Errc::insufficient_data,
                "sample needs at least 2 observations, got " +
                    std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw Error(Errc::positivity, "observation " + std::to_string(i + 1) +
                                        " is not a positive finite number");
    }
  }
  auto data = std::make_shared<Data>();
  data->values = std::move(values);
  data->provenance = std::move(provenance);
  data_ = std::move(data);
}

Sample Sample::parse(std::istream& in, const std::string& source) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t");
    const std::string token = line.substr(first, last - first + 1);

    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw Error(Errc::parse, source + ":" + std::to_string(line_no) +
                                   ": not a decimal number: '" + token + "'");
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw Error(Errc::parse, source + ":" + std::to_string(line_no) +
                                   ": value must be positive and finite: '" +
                                   token + "'");
    }
    values.push_back(value);
  }
  if (values.size() < 2) {
    throw Error(Errc::parse,
                source + ": need at least 2 observations, found " +
                    std::to_string(values.size()));
  }
  return Sample(std::move(values), Provenance::from_file(source));
}

Sample Sample::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse, "cannot open '" + path + "'");
  return parse(in, path);
}

std::span<const double> Sample::sorted_descending() const {
  std::call_once(data_->sorted_once, [this] {
    data_->sorted = data_->values;
    std::sort(data_->sorted.begin(), data_->sorted.end(), std::greater<>());
    data_->sorted_ready.store(true, std::memory_order_release);
  });
  return data_->sorted;
}

std::vector<double> Sample::top(std::size_t count) const {
  count = std::min(count, size());
  if (data_->sorted_ready.load(std::memory_order_acquire)) {
    const auto sorted = sorted_descending();
    return {sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(count)};
  }
  std::vector<double> work = data_->values;
  const auto mid = work.begin() + static_cast<std::ptrdiff_t>(count);
  if (count < work.size()) {
    std::nth_element(work.begin(), mid, work.end(), std::greater<>());
  }
  std::sort(work.begin(), mid, std::greater<>());
  work.resize(count);
  return work;
}

Sample Sample::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(Errc::invalid_parameters, "scale factor must be positive");
  }
  std::vector<double> out(data_->values);
  for (double& v : out) v *= factor;
  return Sample(std::move(out), data_->provenance);
}

}  // namespace tailix
