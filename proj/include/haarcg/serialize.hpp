// Copyright 2026 The haarcg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Little-endian binary helpers for the on-disk formats.

#pragma once

#include <complex>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "haarcg/errors.hpp"

namespace haarcg {

class BinaryWriter {
  public:
    explicit BinaryWriter(std::ostream &os) : os_(os) {}

    void raw(const void *data, std::size_t n) { os_.write(static_cast<const char *>(data), static_cast<std::streamsize>(n)); }
    void u32(std::uint32_t v) { put(v); }
    void u64(std::uint64_t v) { put(v); }
    void i32(std::int32_t v) { put(v); }
    void f64(double v) { put(v); }
    void cplx(std::complex<double> v) {
        f64(v.real());
        f64(v.imag());
    }
    void str(const std::string &s) {
        u32(static_cast<std::uint32_t>(s.size()));
        raw(s.data(), s.size());
    }
    void ints(const std::vector<int> &v) {
        u32(static_cast<std::uint32_t>(v.size()));
        for (int x : v) i32(x);
    }

  private:
    template <typename T>
    void put(T v) {
        unsigned char buf[sizeof(T)];
        std::memcpy(buf, &v, sizeof(T));
        raw(buf, sizeof(T));
    }
    std::ostream &os_;
};

class BinaryReader {
  public:
    explicit BinaryReader(std::istream &is) : is_(is) {}

    void raw(void *data, std::size_t n) {
        is_.read(static_cast<char *>(data), static_cast<std::streamsize>(n));
        if (!is_) throw Error(ErrorKind::kFormatError, "truncated input");
    }
    std::uint32_t u32() { return get<std::uint32_t>(); }
    std::uint64_t u64() { return get<std::uint64_t>(); }
    std::int32_t i32() { return get<std::int32_t>(); }
    double f64() { return get<double>(); }
    std::complex<double> cplx() {
        const double re = f64();
        return {re, f64()};
    }
    std::string str() {
        const std::uint32_t n = u32();
        if (n > (1u << 20)) throw Error(ErrorKind::kFormatError, "string too long");
        std::string s(n, '\0');
        raw(s.data(), n);
        return s;
    }
    std::vector<int> ints() {
        const std::uint32_t n = u32();
        if (n > (1u << 24)) throw Error(ErrorKind::kFormatError, "vector too long");
        std::vector<int> v(n);
        for (auto &x : v) x = i32();
        return v;
    }

  private:
    template <typename T>
    T get() {
        unsigned char buf[sizeof(T)];
        raw(buf, sizeof(T));
        T v;
        std::memcpy(&v, buf, sizeof(T));
        return v;
    }
    std::istream &is_;
};

}  // namespace haarcg
