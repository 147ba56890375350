#pragma once

#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "linkpath/geom.hpp"

namespace lp {

struct StatusInterval {
    Coord lo, hi;
    int source = -1;
    bool operator==(const StatusInterval& o) const { return lo == o.lo && hi == o.hi && source == o.source; }
};

// Disjoint open intervals on a sweep line. Intervals are stored in a sheared
// coordinate (physical - shear * height) so a height change never touches them.
class SweepStatus {
public:
    explicit SweepStatus(Coord shear = 0, bool sheared = true) : shear_(std::move(shear)), sheared_(sheared) {}

    void shift_frame(const Coord& new_height);
    const Coord& height() const { return height_; }
    const Coord& shear() const { return shear_; }

    void insert(const StatusInterval& iv);
    // Removes (lo, hi) from every stored interval and returns the removed pieces.
    std::vector<StatusInterval> clip(const Coord& lo, const Coord& hi);
    std::vector<StatusInterval> overlap(const Coord& lo, const Coord& hi) const;
    std::vector<StatusInterval> intervals() const;  // physical, ordered
    size_t size() const { return map_.size(); }
    bool empty() const { return map_.empty(); }
    void clear() { map_.clear(); }

private:
    struct Stored {
        Coord hi;
        int source;
    };
    Coord offset() const { return shear_ * height_; }
    std::vector<std::map<Coord, Stored>::iterator> overlapping(const Coord& lo, const Coord& hi);

    Coord shear_;
    bool sheared_;
    Coord height_ = 0;
    std::map<Coord, Stored> map_;  // sheared lo -> (sheared hi, source)
};

// Reference implementation that moves every interval physically on each height change.
class NaiveStatus {
public:
    explicit NaiveStatus(Coord shear = 0) : shear_(std::move(shear)) {}
    void shift_frame(const Coord& new_height);
    void insert(const StatusInterval& iv);
    std::vector<StatusInterval> clip(const Coord& lo, const Coord& hi);
    std::vector<StatusInterval> overlap(const Coord& lo, const Coord& hi) const;
    std::vector<StatusInterval> intervals() const;

private:
    Coord shear_, height_ = 0;
    std::vector<StatusInterval> v_;
};

// Min-queue on (height, event class, id); equal keys come out in a fixed order.
template <class Payload>
class EventQueue {
public:
    void push(const Coord& height, int cls, int id, Payload p) {
        q_.push(Item{height, cls, id, seq_++, std::move(p)});
    }
    bool empty() const { return q_.empty(); }
    size_t size() const { return q_.size(); }
    const Coord& top_height() const { return q_.top().height; }
    int top_class() const { return q_.top().cls; }
    Payload pop(Coord* height = nullptr, int* cls = nullptr, int* id = nullptr) {
        Item it = q_.top();
        q_.pop();
        if (height) *height = it.height;
        if (cls) *cls = it.cls;
        if (id) *id = it.id;
        return std::move(it.payload);
    }

private:
    struct Item {
        Coord height;
        int cls, id;
        long seq;
        Payload payload;
        bool operator>(const Item& o) const {
            if (height != o.height) return height > o.height;
            if (cls != o.cls) return cls > o.cls;
            if (id != o.id) return id > o.id;
            return seq > o.seq;
        }
    };
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> q_;
    long seq_ = 0;
};

}  // namespace lp
