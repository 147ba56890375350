#include "linkpath/sweep.hpp"

#include <algorithm>

namespace lp {

void SweepStatus::shift_frame(const Coord& new_height) {
    if (!sheared_ && new_height != height_) throw std::logic_error("status has no shear frame");
    height_ = new_height;
}

std::vector<std::map<Coord, SweepStatus::Stored>::iterator> SweepStatus::overlapping(const Coord& lo, const Coord& hi) {
    std::vector<std::map<Coord, Stored>::iterator> out;
    auto it = map_.lower_bound(lo);
    if (it != map_.begin()) {
        auto pv = std::prev(it);
        if (pv->second.hi > lo) out.push_back(pv);
    }
    for (; it != map_.end() && it->first < hi; ++it) out.push_back(it);
    return out;
}

void SweepStatus::insert(const StatusInterval& iv) {
    if (!(iv.lo < iv.hi)) return;
    Coord off = offset();
    Coord lo = iv.lo - off, hi = iv.hi - off;
    for (auto it : overlapping(lo, hi)) {
        Coord a = it->first, b = it->second.hi;
        int src = it->second.source;
        map_.erase(it);
        if (a < lo) map_.emplace(a, Stored{lo, src});
        if (hi < b) map_.emplace(hi, Stored{b, src});
    }
    map_.emplace(lo, Stored{hi, iv.source});
}

std::vector<StatusInterval> SweepStatus::clip(const Coord& plo, const Coord& phi) {
    std::vector<StatusInterval> cut;
    if (!(plo < phi)) return cut;
    Coord off = offset();
    Coord lo = plo - off, hi = phi - off;
    for (auto it : overlapping(lo, hi)) {
        Coord a = it->first, b = it->second.hi;
        int src = it->second.source;
        map_.erase(it);
        cut.push_back({std::max(a, lo) + off, std::min(b, hi) + off, src});
        if (a < lo) map_.emplace(a, Stored{lo, src});
        if (hi < b) map_.emplace(hi, Stored{b, src});
    }
    return cut;
}

std::vector<StatusInterval> SweepStatus::overlap(const Coord& plo, const Coord& phi) const {
    std::vector<StatusInterval> out;
    Coord off = offset();
    Coord lo = plo - off, hi = phi - off;
    auto it = map_.lower_bound(lo);
    if (it != map_.begin()) {
        auto pv = std::prev(it);
        if (pv->second.hi > lo) out.push_back({pv->first + off, pv->second.hi + off, pv->second.source});
    }
    for (; it != map_.end() && it->first < hi; ++it) {
        if (!(it->second.hi > lo)) continue;
        out.push_back({it->first + off, it->second.hi + off, it->second.source});
    }
    return out;
}

std::vector<StatusInterval> SweepStatus::intervals() const {
    std::vector<StatusInterval> out;
    Coord off = offset();
    for (auto& [lo, s] : map_) out.push_back({lo + off, s.hi + off, s.source});
    return out;
}

// ---------------------------------------------------------------- naive reference

void NaiveStatus::shift_frame(const Coord& new_height) {
    Coord d = shear_ * (new_height - height_);
    for (auto& iv : v_) {
        iv.lo += d;
        iv.hi += d;
    }
    height_ = new_height;
}

void NaiveStatus::insert(const StatusInterval& iv) {
    if (!(iv.lo < iv.hi)) return;
    std::vector<StatusInterval> next;
    for (auto& x : v_) {
        if (x.hi <= iv.lo || iv.hi <= x.lo) {
            next.push_back(x);
            continue;
        }
        if (x.lo < iv.lo) next.push_back({x.lo, iv.lo, x.source});
        if (iv.hi < x.hi) next.push_back({iv.hi, x.hi, x.source});
    }
    next.push_back(iv);
    v_.swap(next);
}

std::vector<StatusInterval> NaiveStatus::clip(const Coord& lo, const Coord& hi) {
    std::vector<StatusInterval> next, cut;
    if (!(lo < hi)) return cut;
    for (auto& x : v_) {
        if (x.hi <= lo || hi <= x.lo) {
            next.push_back(x);
            continue;
        }
        cut.push_back({std::max(x.lo, lo), std::min(x.hi, hi), x.source});
        if (x.lo < lo) next.push_back({x.lo, lo, x.source});
        if (hi < x.hi) next.push_back({hi, x.hi, x.source});
    }
    v_.swap(next);
    std::sort(cut.begin(), cut.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
    return cut;
}

std::vector<StatusInterval> NaiveStatus::overlap(const Coord& lo, const Coord& hi) const {
    std::vector<StatusInterval> out;
    for (auto& x : v_)
        if (x.lo < hi && lo < x.hi) out.push_back(x);
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
    return out;
}

std::vector<StatusInterval> NaiveStatus::intervals() const {
    auto out = v_;
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
    return out;
}

}  // namespace lp
