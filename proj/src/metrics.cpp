#include "slotsim/metrics.hpp"

#include "slotsim/clock.hpp"

namespace slotsim {

void SampleStore::add(std::int64_t v) {
  if (count_ == 0) {
    max_ = min_ = v;
  } else {
    if (v > max_) max_ = v;
    if (v < min_) min_ = v;
  }
  count_++;
  if (!sketched_) {
    samples_.push_back(v);
    if (samples_.size() > cap_) {
      for (std::int64_t s : samples_) bins_[floor_div(s, bin_width_)]++;
      samples_.clear();
      samples_.shrink_to_fit();
      sketched_ = true;
    }
  } else {
    bins_[floor_div(v, bin_width_)]++;
  }
}

std::int64_t SampleStore::percentile_value(double p) const {
  if (count_ == 0) throw Error("percentile of empty sample store");
  if (!(p > 0.0) || p > 100.0) throw Error("percentile p must be in (0, 100]");
  if (!sketched_) return percentile(samples_, p);
  const double exact = p * static_cast<double>(count_) / 100.0;
  auto rank = static_cast<std::uint64_t>(std::ceil(exact - 1e-9));
  if (rank < 1) rank = 1;
  if (rank > count_) rank = count_;
  std::uint64_t seen = 0;
  for (const auto& [bin, n] : bins_) {
    seen += n;
    // inclusive upper edge of the hit bin, never past the true maximum
    if (seen >= rank) return std::min((bin + 1) * bin_width_ - 1, max_);
  }
  return max_;
}

std::uint64_t MetricsReport::alignment_device_total() const {
  std::uint64_t t = 0;
  for (const auto& [n, hist] : alignment) {
    if (n == ap_node) continue;
    for (const auto& [bin, c] : hist) t += c;
  }
  return t;
}

std::uint64_t MetricsReport::alignment_device_bin(std::int64_t bin) const {
  std::uint64_t t = 0;
  for (const auto& [n, hist] : alignment) {
    if (n == ap_node) continue;
    const auto it = hist.find(bin);
    if (it != hist.end()) t += it->second;
  }
  return t;
}

std::uint64_t MetricsReport::alignment_device_within(std::int64_t max_abs_bin) const {
  std::uint64_t t = 0;
  for (const auto& [n, hist] : alignment) {
    if (n == ap_node) continue;
    for (const auto& [bin, c] : hist) {
      if (bin <= max_abs_bin && bin >= -max_abs_bin) t += c;
    }
  }
  return t;
}

void record_alignment(MetricsReport& report, NodeId sender, std::int64_t delta_samples) {
  report.alignment[sender][delta_samples]++;
}

}  // namespace slotsim
