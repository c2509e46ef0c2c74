#ifndef SISHD_SVG_HPP
#define SISHD_SVG_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sishd/format.hpp"

namespace sishd::svg {

inline std::string escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

/// Evenly spaced "nice" tick values (1, 2, 5 x 10^k) covering [lo, hi].
inline std::vector<double> nice_ticks(double lo, double hi, int target = 6)
{
    if (!(hi > lo)) {
        return {lo};
    }
    const double raw = (hi - lo) / std::max(1, target);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = (norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0) * mag;
    std::vector<double> ticks;
    const auto first = static_cast<long long>(std::ceil(lo / step - 1e-9));
    const auto last = static_cast<long long>(std::floor(hi / step + 1e-9));
    for (long long k = first; k <= last; ++k) {
        ticks.push_back(static_cast<double>(k) * step);
    }
    return ticks;
}

/// Keeps the first, last, and per-bucket extreme points so peaks and troughs survive.
inline std::vector<std::size_t> decimate(const std::vector<double>& y, std::size_t max_points)
{
    const std::size_t n = y.size();
    std::vector<std::size_t> idx;
    if (n <= max_points || max_points < 4) {
        idx.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            idx[i] = i;
        }
        return idx;
    }
    const std::size_t buckets = max_points / 2;
    idx.push_back(0);
    for (std::size_t b = 0; b < buckets; ++b) {
        const std::size_t lo = 1 + b * (n - 2) / buckets;
        const std::size_t hi = 1 + (b + 1) * (n - 2) / buckets;
        if (lo >= hi) {
            continue;
        }
        const auto first = y.begin() + static_cast<std::ptrdiff_t>(lo);
        const auto last = y.begin() + static_cast<std::ptrdiff_t>(hi);
        const auto [mn, mx] = std::minmax_element(first, last);
        std::size_t a = static_cast<std::size_t>(mn - y.begin());
        std::size_t c = static_cast<std::size_t>(mx - y.begin());
        if (a > c) {
            std::swap(a, c);
        }
        idx.push_back(a);
        if (c != a) {
            idx.push_back(c);
        }
    }
    idx.push_back(n - 1);
    return idx;
}

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    std::string color;
};

struct Frame {
    int width = 860;
    int height = 520;
    int left = 90;
    int right = 170;
    int top = 50;
    int bottom = 70;

    double plot_w() const { return width - left - right; }
    double plot_h() const { return height - top - bottom; }
};

namespace detail {

inline std::string num(double v) { return format_fixed(v, 2); }

inline std::string tick_label(double v)
{
    std::string s = format_number(v);
    if (s.size() > 10) {
        s = format_fixed(v, 4);
    }
    return s;
}

inline void open_document(std::ostringstream& os, const Frame& f, std::string_view title)
{
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\"" << f.height
       << "\" viewBox=\"0 0 " << f.width << ' ' << f.height << "\" font-family=\"sans-serif\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << f.width / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"17\">" << escape(title)
       << "</text>\n";
}

inline void axis_labels(std::ostringstream& os, const Frame& f, std::string_view x_label, std::string_view y_label)
{
    os << "<text x=\"" << num(f.left + f.plot_w() / 2) << "\" y=\"" << f.height - 18
       << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(x_label) << "</text>\n";
    os << "<text transform=\"translate(22," << num(f.top + f.plot_h() / 2)
       << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"14\">" << escape(y_label) << "</text>\n";
}

} // namespace detail

class LineChart {
public:
    LineChart(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label))
    {
    }

    void add(Series s) { series_.push_back(std::move(s)); }
    void set_zero_line(bool on) { zero_line_ = on; }
    void set_max_points(std::size_t n) { max_points_ = n; }
    const std::vector<Series>& series() const { return series_; }

    std::string render() const
    {
        if (series_.empty()) {
            throw std::invalid_argument("line chart has no series");
        }
        double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
        for (const auto& s : series_) {
            if (s.x.size() != s.y.size() || s.x.empty()) {
                throw std::invalid_argument("series '" + s.name + "' is empty or ragged");
            }
            x0 = std::min(x0, *std::min_element(s.x.begin(), s.x.end()));
            x1 = std::max(x1, *std::max_element(s.x.begin(), s.x.end()));
            y0 = std::min(y0, *std::min_element(s.y.begin(), s.y.end()));
            y1 = std::max(y1, *std::max_element(s.y.begin(), s.y.end()));
        }
        if (zero_line_) {
            y0 = std::min(y0, 0.0);
            y1 = std::max(y1, 0.0);
        }
        if (!(y1 > y0)) {
            y0 -= 1.0;
            y1 += 1.0;
        }
        const double pad = 0.05 * (y1 - y0);
        y0 -= pad;
        y1 += pad;
        if (!(x1 > x0)) {
            x1 = x0 + 1.0;
        }

        const Frame f;
        auto px = [&](double x) { return f.left + (x - x0) / (x1 - x0) * f.plot_w(); };
        auto py = [&](double y) { return f.top + (y1 - y) / (y1 - y0) * f.plot_h(); };

        std::ostringstream os;
        detail::open_document(os, f, title_);
        os << "<g stroke=\"#dddddd\" stroke-width=\"1\" font-size=\"12\">\n";
        for (double t : nice_ticks(x0, x1)) {
            os << "<line x1=\"" << detail::num(px(t)) << "\" y1=\"" << f.top << "\" x2=\"" << detail::num(px(t))
               << "\" y2=\"" << f.top + f.plot_h() << "\"/>\n"
               << "<text x=\"" << detail::num(px(t)) << "\" y=\"" << f.top + f.plot_h() + 18
               << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"black\">" << detail::tick_label(t) << "</text>\n";
        }
        for (double t : nice_ticks(y0, y1)) {
            os << "<line x1=\"" << f.left << "\" y1=\"" << detail::num(py(t)) << "\" x2=\"" << f.left + f.plot_w()
               << "\" y2=\"" << detail::num(py(t)) << "\"/>\n"
               << "<text x=\"" << f.left - 6 << "\" y=\"" << detail::num(py(t) + 4)
               << "\" text-anchor=\"end\" stroke=\"none\" fill=\"black\">" << detail::tick_label(t) << "</text>\n";
        }
        os << "</g>\n";
        os << "<rect x=\"" << f.left << "\" y=\"" << f.top << "\" width=\"" << f.plot_w() << "\" height=\""
           << f.plot_h() << "\" fill=\"none\" stroke=\"black\"/>\n";
        if (zero_line_) {
            os << "<line class=\"zero\" x1=\"" << f.left << "\" y1=\"" << detail::num(py(0)) << "\" x2=\""
               << f.left + f.plot_w() << "\" y2=\"" << detail::num(py(0))
               << "\" stroke=\"black\" stroke-dasharray=\"5,4\"/>\n";
        }
        for (const auto& s : series_) {
            os << "<polyline class=\"series\" data-name=\"" << escape(s.name) << "\" fill=\"none\" stroke=\""
               << s.color << "\" stroke-width=\"2\" points=\"";
            bool first = true;
            for (std::size_t i : decimate(s.y, max_points_)) {
                os << (first ? "" : " ") << detail::num(px(s.x[i])) << ',' << detail::num(py(s.y[i]));
                first = false;
            }
            os << "\"/>\n";
        }
        int row = 0;
        for (const auto& s : series_) {
            const double ly = f.top + 12 + 22 * row++;
            const double lx = f.left + f.plot_w() + 14;
            os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly
               << "\" stroke=\"" << s.color << "\" stroke-width=\"3\"/>\n"
               << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\" font-size=\"13\">" << escape(s.name)
               << "</text>\n";
        }
        detail::axis_labels(os, f, x_label_, y_label_);
        os << "</svg>\n";
        return os.str();
    }

private:
    std::string title_;
    std::string x_label_;
    std::string y_label_;
    std::vector<Series> series_;
    bool zero_line_ = false;
    std::size_t max_points_ = 2000;
};

struct Bar {
    std::string label;
    double value = 0;
};

/// Signed vertical bars around a zero baseline.
class BarChart {
public:
    BarChart(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label))
    {
    }

    void add(Bar b) { bars_.push_back(std::move(b)); }
    const std::vector<Bar>& bars() const { return bars_; }

    std::string render() const
    {
        if (bars_.empty()) {
            throw std::invalid_argument("bar chart has no bars");
        }
        double y0 = 0.0, y1 = 0.0;
        for (const auto& b : bars_) {
            y0 = std::min(y0, b.value);
            y1 = std::max(y1, b.value);
        }
        if (!(y1 > y0)) {
            y1 = y0 + 1.0;
        }
        const double pad = 0.08 * (y1 - y0);
        y0 -= pad;
        y1 += pad;

        Frame f;
        f.right = 40;
        auto py = [&](double y) { return f.top + (y1 - y) / (y1 - y0) * f.plot_h(); };
        const double slot = f.plot_w() / static_cast<double>(bars_.size());

        std::ostringstream os;
        detail::open_document(os, f, title_);
        os << "<g stroke=\"#dddddd\" font-size=\"12\">\n";
        for (double t : nice_ticks(y0, y1)) {
            os << "<line x1=\"" << f.left << "\" y1=\"" << detail::num(py(t)) << "\" x2=\"" << f.left + f.plot_w()
               << "\" y2=\"" << detail::num(py(t)) << "\"/>\n"
               << "<text x=\"" << f.left - 6 << "\" y=\"" << detail::num(py(t) + 4)
               << "\" text-anchor=\"end\" stroke=\"none\" fill=\"black\">" << detail::tick_label(t) << "</text>\n";
        }
        os << "</g>\n";
        os << "<rect x=\"" << f.left << "\" y=\"" << f.top << "\" width=\"" << f.plot_w() << "\" height=\""
           << f.plot_h() << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (std::size_t i = 0; i < bars_.size(); ++i) {
            const auto& b = bars_[i];
            const double x = f.left + slot * (static_cast<double>(i) + 0.15);
            const double top = py(std::max(b.value, 0.0));
            const double h = std::abs(py(b.value) - py(0.0));
            os << "<rect class=\"bar\" data-name=\"" << escape(b.label) << "\" data-value=\""
               << format_number(b.value) << "\" x=\"" << detail::num(x) << "\" y=\"" << detail::num(top)
               << "\" width=\"" << detail::num(0.7 * slot) << "\" height=\"" << detail::num(h) << "\" fill=\""
               << (b.value >= 0 ? "#3b7dd8" : "#d8553b") << "\"/>\n"
               << "<text x=\"" << detail::num(x + 0.35 * slot) << "\" y=\"" << f.top + f.plot_h() + 18
               << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(b.label) << "</text>\n";
        }
        os << "<line x1=\"" << f.left << "\" y1=\"" << detail::num(py(0)) << "\" x2=\"" << f.left + f.plot_w()
           << "\" y2=\"" << detail::num(py(0)) << "\" stroke=\"black\"/>\n";
        detail::axis_labels(os, f, x_label_, y_label_);
        os << "</svg>\n";
        return os.str();
    }

private:
    std::string title_;
    std::string x_label_;
    std::string y_label_;
    std::vector<Bar> bars_;
};

} // namespace sishd::svg

#endif
