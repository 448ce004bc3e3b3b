// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aperiodic/error.hpp"

namespace aperiodic {

/// Symbols 0..k-1 render as 0-9 then a-z, so k is capped at 36.
inline constexpr int kMaxAlphabet = 36;

class Alphabet {
 public:
  explicit Alphabet(int k) : k_(k) {
    if (k < 2 || k > kMaxAlphabet)
      fail(ErrorCode::InvalidArgument, "alphabet size must lie in [2, 36], got " + std::to_string(k));
  }
  int size() const { return k_; }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  int k_;
};

inline char symbol_char(int symbol) {
  return static_cast<char>(symbol < 10 ? '0' + symbol : 'a' + (symbol - 10));
}

inline int symbol_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

/// A finite word w(1..m) over an alphabet of size k. Positions are 1-based in
/// the public accessors; `symbols()` exposes the 0-based storage.
class FiniteWord {
 public:
  using Symbol = std::uint8_t;

  explicit FiniteWord(Alphabet alphabet) : alphabet_(alphabet) {}
  FiniteWord(Alphabet alphabet, std::vector<Symbol> symbols)
      : alphabet_(alphabet), symbols_(std::move(symbols)) {
    for (std::size_t j = 0; j < symbols_.size(); ++j)
      if (symbols_[j] >= alphabet_.size())
        fail(ErrorCode::InvalidArgument, "symbol " + std::to_string(symbols_[j]) + " at position " +
                                             std::to_string(j + 1) + " outside alphabet of size " +
                                             std::to_string(alphabet_.size()));
  }

  /// Parses "0110..." over the given alphabet; rejects symbols >= k.
  static FiniteWord parse(std::string_view text, Alphabet alphabet) {
    std::vector<Symbol> out;
    out.reserve(text.size());
    for (std::size_t j = 0; j < text.size(); ++j) {
      int v = symbol_value(text[j]);
      if (v < 0 || v >= alphabet.size())
        fail(ErrorCode::Parse, "symbol '" + std::string(1, text[j]) + "' at column " +
                                   std::to_string(j + 1) + " is not in an alphabet of size " +
                                   std::to_string(alphabet.size()));
      out.push_back(static_cast<Symbol>(v));
    }
    return FiniteWord(alphabet, std::move(out));
  }

  const Alphabet& alphabet() const { return alphabet_; }
  int k() const { return alphabet_.size(); }
  std::size_t length() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }

  /// w(i) for 1 <= i <= m.
  Symbol at(std::size_t i) const {
    if (i < 1 || i > symbols_.size())
      fail(ErrorCode::OutOfBounds, "position " + std::to_string(i) + " outside word of length " +
                                       std::to_string(symbols_.size()));
    return symbols_[i - 1];
  }

  std::span<const Symbol> symbols() const { return symbols_; }

  void push_back(Symbol s) {
    if (s >= alphabet_.size()) fail(ErrorCode::InvalidArgument, "symbol outside alphabet");
    symbols_.push_back(s);
  }
  void pop_back() { symbols_.pop_back(); }

  /// [w(i) ... w(i+l)], 1-based, inclusive.
  FiniteWord window(std::size_t i, std::size_t l) const {
    if (i < 1 || i + l > symbols_.size())
      fail(ErrorCode::OutOfBounds, "window [" + std::to_string(i) + ", " + std::to_string(i + l) +
                                       "] outside word of length " + std::to_string(symbols_.size()));
    return FiniteWord(alphabet_, {symbols_.begin() + static_cast<std::ptrdiff_t>(i - 1),
                                  symbols_.begin() + static_cast<std::ptrdiff_t>(i + l)});
  }

  std::string str() const {
    std::string out;
    out.reserve(symbols_.size());
    for (Symbol s : symbols_) out.push_back(symbol_char(s));
    return out;
  }

  friend bool operator==(const FiniteWord&, const FiniteWord&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Symbol> symbols_;
};

}  // namespace aperiodic
