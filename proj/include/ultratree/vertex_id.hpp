#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ultratree/errors.hpp"

namespace ultratree {

// Root path of a generator vertex as run-length-encoded child indices.
// Text form: "r" for the root, then "/c" per step, runs compressed as "/c^k"
// ("r/0^3/1" = fourth vertex down the leftmost path, then child 1).
// Runs keep ids of deep ray vertices O(1) instead of O(depth).
class Address {
 public:
  struct Run {
    std::uint64_t child;
    std::uint64_t count;
    friend bool operator==(const Run&, const Run&) = default;
  };

  Address() = default;  // root

  static Address of_steps(const std::vector<std::uint64_t>& steps) {
    Address a;
    for (auto s : steps) a.push_step(s);
    return a;
  }

  static Address parse(std::string_view text) {
    if (text.empty() || text.front() != 'r')
      fail(Errc::MalformedInput, "address must start with 'r': '" + std::string(text) + "'");
    Address a;
    std::size_t pos = 1;
    while (pos < text.size()) {
      if (text[pos] != '/')
        fail(Errc::MalformedInput, "bad address component: '" + std::string(text) + "'");
      ++pos;
      std::size_t end = text.find('/', pos);
      std::string_view comp = text.substr(pos, end == std::string_view::npos ? end : end - pos);
      auto caret = comp.find('^');
      std::string_view child_s = comp.substr(0, caret);
      std::string_view count_s =
          caret == std::string_view::npos ? std::string_view("1") : comp.substr(caret + 1);
      auto parse_u64 = [&](std::string_view s) -> std::uint64_t {
        if (s.empty()) fail(Errc::MalformedInput, "bad address component in '" + std::string(text) + "'");
        std::uint64_t v = 0;
        for (char c : s) {
          if (c < '0' || c > '9')
            fail(Errc::MalformedInput, "bad address component in '" + std::string(text) + "'");
          v = v * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return v;
      };
      std::uint64_t child = parse_u64(child_s);
      std::uint64_t count = parse_u64(count_s);
      if (count == 0) fail(Errc::MalformedInput, "zero run in '" + std::string(text) + "'");
      a.append_run(child, count);
      pos = end == std::string_view::npos ? text.size() : end;
    }
    return a;
  }

  std::string to_string() const {
    std::string out = "r";
    for (const Run& run : runs_) {
      out += '/';
      out += std::to_string(run.child);
      if (run.count > 1) {
        out += '^';
        out += std::to_string(run.count);
      }
    }
    return out;
  }

  bool is_root() const { return runs_.empty(); }
  std::uint64_t depth() const { return depth_; }
  const std::vector<Run>& runs() const { return runs_; }

  Address child(std::uint64_t index) const {
    Address a = *this;
    a.push_step(index);
    return a;
  }

  Address parent() const {
    Address a = *this;
    if (a.runs_.empty()) fail(Errc::UnknownVertex, "root has no parent");
    if (--a.runs_.back().count == 0) a.runs_.pop_back();
    --a.depth_;
    return a;
  }

  std::uint64_t last_step() const { return runs_.back().child; }

  std::uint64_t step_at(std::uint64_t i) const {  // 0-based
    for (const Run& run : runs_) {
      if (i < run.count) return run.child;
      i -= run.count;
    }
    fail(Errc::UnknownVertex, "step index past address depth");
  }

  Address prefix(std::uint64_t steps) const {
    Address a;
    for (const Run& run : runs_) {
      if (steps == 0) break;
      std::uint64_t take = steps < run.count ? steps : run.count;
      a.append_run(run.child, take);
      steps -= take;
    }
    return a;
  }

  Address drop_prefix(std::uint64_t steps) const {
    Address a;
    for (const Run& run : runs_) {
      if (steps >= run.count) {
        steps -= run.count;
        continue;
      }
      a.append_run(run.child, run.count - steps);
      steps = 0;
    }
    return a;
  }

  Address append(const Address& suffix) const {
    Address a = *this;
    for (const Run& run : suffix.runs_) a.append_run(run.child, run.count);
    return a;
  }

  // True when *this is a (possibly equal) leading segment of other.
  bool is_prefix_of(const Address& other) const {
    if (depth_ > other.depth_) return false;
    std::uint64_t i = 0, j = 0, ic = 0, jc = 0;
    while (i < runs_.size()) {
      if (j >= other.runs_.size()) return false;
      if (runs_[i].child != other.runs_[j].child) return false;
      std::uint64_t a = runs_[i].count - ic, b = other.runs_[j].count - jc;
      std::uint64_t step = a < b ? a : b;
      ic += step;
      jc += step;
      if (ic == runs_[i].count) { ++i; ic = 0; }
      if (jc == other.runs_[j].count) { ++j; jc = 0; }
    }
    return true;
  }

  // Lexicographic on the step sequence, shorter prefix first.
  std::strong_ordering operator<=>(const Address& other) const {
    std::uint64_t i = 0, j = 0, ic = 0, jc = 0;
    while (i < runs_.size() && j < other.runs_.size()) {
      if (runs_[i].child != other.runs_[j].child)
        return runs_[i].child <=> other.runs_[j].child;
      std::uint64_t a = runs_[i].count - ic, b = other.runs_[j].count - jc;
      std::uint64_t step = a < b ? a : b;
      ic += step;
      jc += step;
      if (ic == runs_[i].count) { ++i; ic = 0; }
      if (jc == other.runs_[j].count) { ++j; jc = 0; }
    }
    bool more_a = i < runs_.size(), more_b = j < other.runs_.size();
    if (more_a == more_b) return std::strong_ordering::equal;
    return more_a ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  bool operator==(const Address& other) const { return (*this <=> other) == 0; }

 private:
  void push_step(std::uint64_t child) { append_run(child, 1); }
  void append_run(std::uint64_t child, std::uint64_t count) {
    if (!runs_.empty() && runs_.back().child == child)
      runs_.back().count += count;
    else
      runs_.push_back({child, count});
    depth_ += count;
  }

  std::vector<Run> runs_;
  std::uint64_t depth_ = 0;
};

// A vertex name: either a bare integer (ad-hoc finite trees) or a generator
// address. Integers order before addresses.
class VertexId {
 public:
  VertexId() : is_addr_(false), int_(0) {}

  static VertexId of_int(std::uint64_t v) {
    VertexId id;
    id.is_addr_ = false;
    id.int_ = v;
    return id;
  }
  static VertexId of_address(Address a) {
    VertexId id;
    id.is_addr_ = true;
    id.addr_ = std::move(a);
    return id;
  }
  static VertexId parse(std::string_view text) {
    if (!text.empty() && text.front() == 'r') return of_address(Address::parse(text));
    if (text.empty()) fail(Errc::MalformedInput, "empty vertex id");
    std::uint64_t v = 0;
    for (char c : text) {
      if (c < '0' || c > '9')
        fail(Errc::MalformedInput, "bad vertex id: '" + std::string(text) + "'");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return of_int(v);
  }

  bool is_address() const { return is_addr_; }
  const Address& address() const {
    if (!is_addr_) fail(Errc::MalformedInput, "vertex id is not an address");
    return addr_;
  }
  std::uint64_t int_value() const { return int_; }

  std::string to_string() const { return is_addr_ ? addr_.to_string() : std::to_string(int_); }

  std::strong_ordering operator<=>(const VertexId& other) const {
    if (is_addr_ != other.is_addr_)
      return is_addr_ ? std::strong_ordering::greater : std::strong_ordering::less;
    if (!is_addr_) return int_ <=> other.int_;
    return addr_ <=> other.addr_;
  }
  bool operator==(const VertexId& other) const { return (*this <=> other) == 0; }

 private:
  bool is_addr_;
  std::uint64_t int_ = 0;
  Address addr_;
};

}  // namespace ultratree
