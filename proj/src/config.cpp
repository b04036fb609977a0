#include "boxball/config.hpp"

#include <algorithm>
#include <charconv>

namespace boxball {

Configuration Configuration::from_string(std::string_view bits, int64_t lo) {
    std::vector<uint8_t> cells;
    cells.reserve(bits.size());
    for (char c : bits) {
        if (c == '0' || c == '1') {
            cells.push_back(static_cast<uint8_t>(c - '0'));
        } else if (c == ' ' || c == '_') {
            continue;  // cosmetic separators
        } else {
            throw std::invalid_argument("configuration string: unexpected character");
        }
    }
    return Configuration(std::move(cells), lo);
}

Configuration Configuration::parse(std::string_view text) {
    size_t p = 0;
    while (p < text.size() && (text[p] == ' ' || text[p] == '\t')) ++p;
    int64_t lo = 0;
    if (p < text.size() && text[p] == '@') {
        ++p;
        size_t q = p;
        while (q < text.size() && text[q] != ' ' && text[q] != '\t') ++q;
        auto res = std::from_chars(text.data() + p, text.data() + q, lo);
        if (res.ec != std::errc{} || res.ptr != text.data() + q)
            throw std::invalid_argument("configuration text: bad origin");
        p = q;
    }
    return from_string(text.substr(p), lo);
}

std::string Configuration::to_text() const {
    int64_t a = lo(), b = hi();
    if (!empty()) {
        a = support_lo();
        b = support_hi() + 1;
    }
    std::string out = "@" + std::to_string(a) + " ";
    for (int64_t x = a; x < b; ++x) out.push_back(static_cast<char>('0' + get(x)));
    if (a == b) out.push_back('0');
    return out;
}

void Configuration::set(int64_t x, int v) {
    if (x < lo_) {
        cells_.insert(cells_.begin(), static_cast<size_t>(lo_ - x), 0);
        lo_ = x;
    } else if (x >= hi()) {
        cells_.resize(static_cast<size_t>(x - lo_ + 1), 0);
    }
    cells_[static_cast<size_t>(x - lo_)] = static_cast<uint8_t>(v != 0);
}

int64_t Configuration::support_lo(int64_t fallback) const {
    for (size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i]) return lo_ + static_cast<int64_t>(i);
    return fallback;
}

int64_t Configuration::support_hi(int64_t fallback) const {
    for (size_t i = cells_.size(); i-- > 0;)
        if (cells_[i]) return lo_ + static_cast<int64_t>(i);
    return fallback;
}

bool Configuration::empty() const {
    return std::all_of(cells_.begin(), cells_.end(), [](uint8_t c) { return c == 0; });
}

int64_t Configuration::ball_count() const {
    int64_t n = 0;
    for (uint8_t c : cells_) n += c;
    return n;
}

Configuration Configuration::reversed() const {
    // result(x) = (*this)(-x-1)
    std::vector<uint8_t> cells(cells_.rbegin(), cells_.rend());
    return Configuration(std::move(cells), -hi());
}

bool operator==(const Configuration& a, const Configuration& b) {
    int64_t lo = std::min(a.lo(), b.lo());
    int64_t hi = std::max(a.hi(), b.hi());
    for (int64_t x = lo; x < hi; ++x)
        if (a.get(x) != b.get(x)) return false;
    return true;
}

}  // namespace boxball
