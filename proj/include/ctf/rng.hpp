// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random streams.
//
// Every random quantity in a run is drawn from its own stream, addressed by
// (seed, trial, year, purpose). The stream is Philox4x32-10 keyed by the
// 64-bit seed, with the 128-bit counter laid out as
//
//   word 0: block index within the stream (incremented per 4 outputs)
//   word 1: year (two's complement)
//   word 2: trial index
//   word 3: purpose tag
//
// Distinct addresses therefore never share a counter value, and a stream's
// output depends on nothing but its address. Results are identical for any
// schedule of trials across threads.
#pragma once

#include <array>
#include <cstdint>

namespace ctf {

inline constexpr const char* kGeneratorId = "philox4x32-10/ctf-stream-v1";

enum class Purpose : std::uint32_t {
    growth = 1,
    lms = 2,
    gradient = 3,
    model_size = 4,
};

/// Year value used for per-trial (not per-year) streams.
inline constexpr int kTrialWideYear = 0;

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// One application of the Philox4x32 bijection with 10 rounds.
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

struct StreamId {
    std::uint64_t trial = 0;
    int year = 0;
    Purpose purpose = Purpose::growth;
};

class RngStream {
public:
    RngStream(std::uint64_t seed, StreamId id);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1].
    double uniform_open_low() { return 1.0 - uniform(); }
    /// Standard normal via Box-Muller (one output per two uniforms).
    double normal();

    std::uint64_t seed() const { return seed_; }
    const StreamId& id() const { return id_; }

private:
    void refill();

    std::uint64_t seed_;
    StreamId id_;
    PhiloxKey key_{};
    PhiloxCounter ctr_{};
    PhiloxCounter buf_{};
    unsigned used_ = 4;
};

RngStream make_stream(std::uint64_t seed, std::uint64_t trial, int year, Purpose purpose);

}  // namespace ctf
