#ifndef OFM_RANDOM_HPP
#define OFM_RANDOM_HPP

#include <cstdint>
#include <random>

namespace ofm {

/*
 * Random bit stream fully determined by (master_seed, stream_index).
 * Per-sample streams keep ensembles reproducible under any scheduling.
 */
class RngStream {
public:
  using result_type = std::mt19937_64::result_type;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : master_seed_(master_seed), stream_index_(stream_index),
        engine_(seed_engine(master_seed, stream_index)) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() {
    return std::generate_canonical<double, 53>(engine_);
  }

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

private:
  static std::mt19937_64 seed_engine(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
  }

  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
};

} // namespace ofm

#endif // OFM_RANDOM_HPP
