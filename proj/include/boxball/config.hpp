#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boxball {

/// Thrown when an operation needs a larger site window than the one provided.
struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a requested soliton/slot/index does not exist.
struct NotFoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A 0/1 configuration on the integer lattice with finitely many 1s.
///
/// Cells are stored for a window of absolute sites [lo, hi); every site
/// outside the window is 0. Site coordinates are absolute throughout, so
/// shifting is an O(1) metadata update.
class Configuration {
  public:
    Configuration() = default;
    Configuration(std::vector<uint8_t> cells, int64_t lo)
        : cells_(std::move(cells)), lo_(lo) {}

    /// Build from a 0/1 string whose first character sits at site `lo`.
    static Configuration from_string(std::string_view bits, int64_t lo = 0);

    /// Parse the text format: optional "@<origin>" prefix, then 0/1 chars.
    static Configuration parse(std::string_view text);

    /// Text form "@<lo> <bits>" over the support (or the stored window if empty).
    std::string to_text() const;

    int64_t lo() const { return lo_; }
    int64_t hi() const { return lo_ + static_cast<int64_t>(cells_.size()); }

    /// Cell value at any absolute site; 0 outside the stored window.
    int get(int64_t x) const {
        if (x < lo_ || x >= hi()) return 0;
        return cells_[static_cast<size_t>(x - lo_)];
    }

    void set(int64_t x, int v);

    /// Site of the leftmost 1, or `fallback` when empty.
    int64_t support_lo(int64_t fallback = 0) const;
    /// Site of the rightmost 1, or `fallback` when empty.
    int64_t support_hi(int64_t fallback = -1) const;

    bool empty() const;
    int64_t ball_count() const;

    /// The configuration shifted so that old site x reads at new site x - y.
    /// Matches tau_y composed with coordinate relabeling: result(x) = (*this)(x + y).
    Configuration shifted_left(int64_t y) const {
        Configuration c(*this);
        c.lo_ -= y;
        return c;
    }

    /// Spatial reversal x -> -x-1 (used by the inverse dynamics).
    Configuration reversed() const;

    /// Equality as lattice configurations (same set of occupied sites).
    friend bool operator==(const Configuration& a, const Configuration& b);
    friend bool operator!=(const Configuration& a, const Configuration& b) {
        return !(a == b);
    }

    const std::vector<uint8_t>& cells() const { return cells_; }

  private:
    std::vector<uint8_t> cells_;
    int64_t lo_ = 0;
};

}  // namespace boxball
