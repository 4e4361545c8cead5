#pragma once

// Test-only helpers: bundled data paths, seeded generators, and brute-force oracles that
// do not share code paths with the library routines they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "foldray/geom.hpp"
#include "foldray/scene.hpp"

namespace foldray::testing {

inline std::string data_path(const std::string& rel) { return std::string(FOLDRAY_DATA_DIR) + "/" + rel; }
inline std::string scene_path(const std::string& name) { return data_path("scenes/" + name + ".json"); }
inline std::string trace_path(const std::string& name) { return data_path("traces/" + name + ".jsonl"); }

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    Vec3 in_box(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }
    Vec3 unit() {
        std::normal_distribution<double> n(0.0, 1.0);
        for (;;) {
            const Vec3 v{n(gen_), n(gen_), n(gen_)};
            if (length(v) > 1e-6) return normalize(v);
        }
    }
    UnitQuaternion rotation() {
        std::normal_distribution<double> n(0.0, 1.0);
        return UnitQuaternion(n(gen_), n(gen_), n(gen_), n(gen_));
    }

private:
    std::mt19937_64 gen_;
};

/// Deterministic, near-uniform directions on the unit sphere (Fibonacci lattice).
inline Vec3 fibonacci_direction(std::size_t i, std::size_t n) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double y = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - y * y));
    const double phi = golden * static_cast<double>(i);
    return {r * std::cos(phi), y, r * std::sin(phi)};
}

struct SampledApproach {
    double t_a = 0.0;
    double t_b = 0.0;
    double distance = 0.0;
};

/// Distance from a point to the forward half-line of b; also reports the foot parameter.
inline double point_to_half_line(const Vec3& p, const Ray& b, double& t_out) {
    const Vec3 d = b.direction();
    const Vec3 w = p - b.origin();
    t_out = std::max(0.0, w.x * d.x + w.y * d.y + w.z * d.z);
    const Vec3 foot = b.origin() + d * t_out;
    return length(p - foot);
}

/// Dense sampling of t_a over [0, t_max] (step 1e-3), then golden-section refinement.
inline SampledApproach sampled_closest_approach(const Ray& a, const Ray& b, double t_max = 100.0) {
    const auto f = [&](double t) {
        double tb = 0.0;
        return point_to_half_line(a.origin() + a.direction() * t, b, tb);
    };
    const double step = 1e-3;
    double best_t = 0.0;
    double best = f(0.0);
    const long n = static_cast<long>(t_max / step);
    for (long i = 1; i <= n; ++i) {
        const double t = i * step;
        const double v = f(t);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    double lo = std::max(0.0, best_t - step);
    double hi = best_t + step;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    double t_a = 0.5 * (lo + hi);
    double d = f(t_a);
    if (f(0.0) <= d) {
        t_a = 0.0;
        d = f(0.0);
    }
    if (d > best) {
        t_a = best_t;
        d = best;
    }
    double t_b = 0.0;
    point_to_half_line(a.origin() + a.direction() * t_a, b, t_b);
    return {t_a, t_b, d};
}

/// Box membership by direct coordinate test in the box frame (closed set).
inline bool inside_box(const Box& b, const Vec3& p) {
    const Vec3 l = b.orientation.conjugate().rotate(p - b.center);
    return std::abs(l.x) <= b.half_extents.x && std::abs(l.y) <= b.half_extents.y &&
           std::abs(l.z) <= b.half_extents.z;
}

/// First entry parameter found by marching along the ray, refined by bisection.
inline std::optional<double> marched_box_entry(const Ray& r, const Box& b, double t_max, double step = 1e-4) {
    double prev = 0.0;
    if (inside_box(b, r.origin())) return std::nullopt;
    const long n = static_cast<long>(t_max / step);
    for (long i = 1; i <= n; ++i) {
        const double t = i * step;
        if (inside_box(b, r.at(t))) {
            double lo = prev;
            double hi = t;
            for (int k = 0; k < 60; ++k) {
                const double mid = 0.5 * (lo + hi);
                (inside_box(b, r.at(mid)) ? hi : lo) = mid;
            }
            return hi;
        }
        prev = t;
    }
    return std::nullopt;
}

}  // namespace foldray::testing
