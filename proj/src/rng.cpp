// SPDX-License-Identifier: Apache-2.0
#include "ctf/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ctf {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kW0;
            key[1] += kW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, ctr[0], hi0, lo0);
        mulhilo(kM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

RngStream::RngStream(std::uint64_t seed, StreamId id) : seed_(seed), id_(id) {
    if (id.trial > 0xFFFFFFFFull) throw std::out_of_range("RngStream: trial index exceeds 32 bits");
    key_ = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    ctr_ = {0u, static_cast<std::uint32_t>(id.year), static_cast<std::uint32_t>(id.trial),
            static_cast<std::uint32_t>(id.purpose)};
}

void RngStream::refill() {
    buf_ = philox4x32_10(ctr_, key_);
    if (++ctr_[0] == 0) throw std::overflow_error("RngStream: stream exhausted");
    used_ = 0;
}

std::uint32_t RngStream::next_u32() {
    if (used_ == 4) refill();
    return buf_[used_++];
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return (hi << 32) | lo;
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::normal() {
    const double u1 = uniform_open_low();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RngStream make_stream(std::uint64_t seed, std::uint64_t trial, int year, Purpose purpose) {
    return RngStream(seed, StreamId{trial, year, purpose});
}

}  // namespace ctf
