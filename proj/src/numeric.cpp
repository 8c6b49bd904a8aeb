// SPDX-License-Identifier: Apache-2.0
#include "ctf/numeric.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <system_error>

namespace ctf {

std::string format_flop(double value, int sig) {
    if (value == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", sig - 1, value);
    // "1.22e+26" -> "1.22e26", "1.00e-05" -> "1.00e-5"
    std::string s(buf);
    const auto e = s.find('e');
    if (e == std::string::npos) return s;
    std::string mant = s.substr(0, e);
    std::string exp = s.substr(e + 1);
    bool neg = false;
    if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
        neg = exp[0] == '-';
        exp.erase(0, 1);
    }
    while (exp.size() > 1 && exp[0] == '0') exp.erase(0, 1);
    return mant + "e" + (neg ? "-" : "") + exp;
}

std::string format_sig(double value, int sig) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig, value);
    return buf;
}

std::string format_exact(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw std::runtime_error("format_exact: conversion failed");
    return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
    std::size_t b = 0, e = text.size();
    while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
    while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t' || text[e - 1] == '\r')) --e;
    if (b == e) throw std::invalid_argument("empty number");
    const char* first = text.data() + b;
    if (*first == '+') ++first;
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(first, text.data() + e, out);
    if (ec != std::errc{} || ptr != text.data() + e)
        throw std::invalid_argument("not a number: '" + text.substr(b, e - b) + "'");
    if (!std::isfinite(out)) throw std::invalid_argument("non-finite number: '" + text.substr(b, e - b) + "'");
    return out;
}

}  // namespace ctf
