#pragma once

// Exact 2D rate regions {(alpha, beta) : a*alpha + b*beta >= c for all
// half-planes}, with a, b >= 0 and c > 0, so regions are closed upward and
// rightward.

#include "erbound/ratlp.hpp"
#include "erbound/rational.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace erb {

class HalfPlane {
  public:
    HalfPlane() = default;
    // Scaled by a positive factor to coprime integers.
    HalfPlane(const Rational& a, const Rational& b, const Rational& c) {
        if (a == 0 && b == 0) throw std::invalid_argument("half-plane needs a nonzero normal");
        Integer den = lcm(lcm(a.get_den(), b.get_den()), c.get_den());
        Integer na = a.get_num() * (den / a.get_den());
        Integer nb = b.get_num() * (den / b.get_den());
        Integer nc = c.get_num() * (den / c.get_den());
        Integer g = gcd(gcd(na, nb), nc);
        a_ = Rational(na / g);
        b_ = Rational(nb / g);
        c_ = Rational(nc / g);
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }

    bool satisfied_by(const Rational& x, const Rational& y) const { return a_ * x + b_ * y >= c_; }
    bool tight_at(const Rational& x, const Rational& y) const { return a_ * x + b_ * y == c_; }

    std::string to_string() const {
        std::string s;
        if (a_ != 0) s += (a_ == 1 ? std::string() : a_.get_str()) + "ᾱ";
        if (b_ != 0) s += (s.empty() ? "" : "+") + (b_ == 1 ? std::string() : b_.get_str()) + "β̄";
        return s + " ≥ " + c_.get_str();
    }

    friend bool operator==(const HalfPlane&, const HalfPlane&) = default;

  private:
    Rational a_ = 1, b_ = 0, c_ = 0;
};

struct Point2 {
    Rational alpha;
    Rational beta;
    friend bool operator==(const Point2&, const Point2&) = default;
};

class RegionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class Region2D {
  public:
    // Non-redundant half-planes, ordered from the storage-limited side
    // (largest a/(a+b)) to the bandwidth-limited side.
    const std::vector<HalfPlane>& halfplanes() const { return halfplanes_; }
    // Corner points sorted by alpha ascending.
    const std::vector<Point2>& vertices() const { return vertices_; }

    bool contains(const Rational& x, const Rational& y) const {
        return std::all_of(halfplanes_.begin(), halfplanes_.end(), [&](const HalfPlane& h) { return h.satisfied_by(x, y); });
    }

    friend bool operator==(const Region2D&, const Region2D&) = default;

  private:
    friend Region2D region_from_halfplanes(const std::vector<HalfPlane>&);
    std::vector<HalfPlane> halfplanes_;
    std::vector<Point2> vertices_;
};

namespace detail {

// Whether the others imply h: min h.x over the others' region is >= c.
inline bool implied_by(const HalfPlane& h, const std::vector<HalfPlane>& others) {
    if (others.empty()) return false;
    lp::Problem p;
    p.add_column("alpha", false);
    p.add_column("beta", false);
    for (const auto& o : others) p.rows.push_back({{{0, o.a()}, {1, o.b()}}, Rational(-o.c()), lp::Relation::greater_equal});
    p.objective = {{0, h.a()}, {1, h.b()}};
    lp::Solution s = lp::solve(p);
    return s.status == lp::Status::optimal && s.value >= h.c();
}

inline std::optional<Point2> intersect(const HalfPlane& p, const HalfPlane& q) {
    Rational det = p.a() * q.b() - p.b() * q.a();
    if (det == 0) return std::nullopt;
    return Point2{(p.c() * q.b() - p.b() * q.c()) / det, (p.a() * q.c() - p.c() * q.a()) / det};
}

}  // namespace detail

inline Region2D region_from_halfplanes(const std::vector<HalfPlane>& input) {
    if (input.empty()) throw RegionError("region needs at least one half-plane");
    std::vector<HalfPlane> hs;
    for (const auto& h : input) {
        if (h.a() < 0 || h.b() < 0 || h.c() <= 0)
            throw RegionError("half-plane " + h.to_string() + " must have a, b >= 0 and c > 0");
        if (std::find(hs.begin(), hs.end(), h) == hs.end()) hs.push_back(h);
    }
    // Fraction of the normal on alpha; decreasing along the boundary.
    auto slope_key = [](const HalfPlane& h) { return Rational(h.a() / (h.a() + h.b())); };
    std::stable_sort(hs.begin(), hs.end(), [&](const HalfPlane& x, const HalfPlane& y) {
        Rational kx = slope_key(x), ky = slope_key(y);
        if (kx != ky) return kx > ky;
        return x.c() / (x.a() + x.b()) > y.c() / (y.a() + y.b());
    });
    for (std::size_t i = 0; i < hs.size();) {
        std::vector<HalfPlane> others = hs;
        others.erase(others.begin() + static_cast<long>(i));
        if (detail::implied_by(hs[i], others))
            hs.erase(hs.begin() + static_cast<long>(i));
        else
            ++i;
    }

    Region2D r;
    r.halfplanes_ = hs;
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            auto p = detail::intersect(hs[i], hs[j]);
            if (!p || !r.contains(p->alpha, p->beta)) continue;
            if (std::find(r.vertices_.begin(), r.vertices_.end(), *p) == r.vertices_.end()) r.vertices_.push_back(*p);
        }
    std::sort(r.vertices_.begin(), r.vertices_.end(), [](const Point2& x, const Point2& y) {
        if (x.alpha != y.alpha) return x.alpha < y.alpha;
        return x.beta > y.beta;
    });
    return r;
}

inline bool regions_equal(const Region2D& x, const Region2D& y) {
    return x.vertices() == y.vertices() && x.halfplanes() == y.halfplanes();
}

// ---------------------------------------------------------------------------
// Rendering

struct PlotWindow {
    Rational alpha_max{1, 2};
    Rational beta_max{1, 2};
};

enum class EmitFormat { csv, svg };

inline EmitFormat parse_emit_format(std::string_view id) {
    if (id == "csv") return EmitFormat::csv;
    if (id == "svg") return EmitFormat::svg;
    throw RegionError("unsupported output format '" + std::string(id) + "'");
}

namespace detail {

// Where the ray p + t*dir (t >= 0) leaves the window.
inline Point2 clip_ray(const Point2& p, const Rational& dx, const Rational& dy, const PlotWindow& w) {
    std::optional<Rational> t;
    auto consider = [&](const Rational& pos, const Rational& dir, const Rational& hi) {
        if (dir == 0) return;
        Rational bound = dir > 0 ? Rational((hi - pos) / dir) : Rational(-pos / dir);
        if (bound < 0) bound = 0;
        if (!t || bound < *t) t = bound;
    };
    consider(p.alpha, dx, w.alpha_max);
    consider(p.beta, dy, w.beta_max);
    Rational s = t.value_or(0);
    return {p.alpha + s * dx, p.beta + s * dy};
}

}  // namespace detail

// Boundary polyline clipped to the window: the entry point of the
// storage-side ray, the vertices, and the exit point of the bandwidth-side ray.
inline std::vector<Point2> boundary_polyline(const Region2D& r, const PlotWindow& w = {}) {
    const auto& hs = r.halfplanes();
    std::vector<Point2> out;
    if (r.vertices().empty()) {
        const HalfPlane& h = hs.front();
        if (h.b() == 0) return {{h.c() / h.a(), w.beta_max}, {h.c() / h.a(), 0}};
        if (h.a() == 0) return {{0, h.c() / h.b()}, {w.alpha_max, h.c() / h.b()}};
        Point2 top{h.c() / h.a(), 0};
        Point2 left{0, h.c() / h.b()};
        return {detail::clip_ray(top, -h.b(), h.a(), w), detail::clip_ray(left, h.b(), -h.a(), w)};
    }
    const HalfPlane& first = hs.front();
    const HalfPlane& last = hs.back();
    out.push_back(detail::clip_ray(r.vertices().front(), -first.b(), first.a(), w));
    for (const auto& v : r.vertices()) out.push_back(v);
    out.push_back(detail::clip_ray(r.vertices().back(), last.b(), -last.a(), w));
    return out;
}

inline std::string emit_csv(const Region2D& r, const PlotWindow& w = {}) {
    std::ostringstream out;
    out << "alpha_num,alpha_den,beta_num,beta_den,alpha_dec,beta_dec\n";
    for (const auto& p : boundary_polyline(r, w)) {
        out << p.alpha.get_num().get_str() << ',' << p.alpha.get_den().get_str() << ',' << p.beta.get_num().get_str()
            << ',' << p.beta.get_den().get_str() << ',' << to_decimal(p.alpha) << ',' << to_decimal(p.beta) << '\n';
    }
    return out.str();
}

inline std::string emit_svg(const Region2D& r, const PlotWindow& w = {}, std::string_view title = "Rate region") {
    constexpr double width = 800, height = 600, left = 80, right = 40, top = 50, bottom = 70;
    const double pw = width - left - right, ph = height - top - bottom;
    const double wa = w.alpha_max.get_d(), wb = w.beta_max.get_d();
    auto px = [&](const Rational& x) { return left + x.get_d() / wa * pw; };
    auto py = [&](const Rational& y) { return top + (1.0 - y.get_d() / wb) * ph; };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    std::vector<Point2> line = boundary_polyline(r, w);
    std::vector<Point2> poly = line;
    if (!poly.empty()) {
        const Point2& end = poly.back();
        if (end.beta == 0 && end.alpha < w.alpha_max) poly.push_back({w.alpha_max, 0});
        poly.push_back({w.alpha_max, w.beta_max});
        if (poly.front().alpha == 0 && poly.front().beta < w.beta_max) poly.push_back({0, w.beta_max});
    }

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n"
        << "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n"
        << "  <text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">" << title
        << "</text>\n";
    out << "  <polygon class=\"feasible\" fill=\"#cfe3f7\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) out << (i ? " " : "") << num(px(poly[i].alpha)) << ',' << num(py(poly[i].beta));
    out << "\"/>\n";
    out << "  <polyline class=\"boundary\" fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < line.size(); ++i) out << (i ? " " : "") << num(px(line[i].alpha)) << ',' << num(py(line[i].beta));
    out << "\"/>\n";

    // Axes with five ticks each.
    out << "  <line x1=\"" << num(left) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(left + pw) << "\" y2=\""
        << num(top + ph) << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\""
        << num(top + ph) << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        Rational fa = w.alpha_max * Rational(t, 5), fb = w.beta_max * Rational(t, 5);
        out << "  <text x=\"" << num(px(fa)) << "\" y=\"" << num(top + ph + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << to_decimal(fa, 2) << "</text>\n";
        out << "  <text x=\"" << num(left - 8) << "\" y=\"" << num(py(fb) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << to_decimal(fb, 2) << "</text>\n";
    }
    out << "  <text x=\"" << num(left + pw / 2) << "\" y=\"" << num(height - 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">normalized storage ᾱ</text>\n";
    out << "  <text x=\"20\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 20 "
        << num(top + ph / 2) << ")\">normalized repair bandwidth β̄</text>\n";

    for (const auto& v : r.vertices()) {
        out << "  <circle class=\"vertex\" cx=\"" << num(px(v.alpha)) << "\" cy=\"" << num(py(v.beta))
            << "\" r=\"4\" fill=\"#c0392b\"/>\n";
        out << "  <text class=\"vertex-label\" x=\"" << num(px(v.alpha) + 8) << "\" y=\"" << num(py(v.beta) - 8)
            << "\" font-family=\"sans-serif\" font-size=\"12\">(" << v.alpha.get_str() << ", " << v.beta.get_str()
            << ")</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

inline std::string emit(const Region2D& r, EmitFormat f, const PlotWindow& w = {}) {
    return f == EmitFormat::csv ? emit_csv(r, w) : emit_svg(r, w);
}

}  // namespace erb
