#pragma once

#include <hurwitzkit/complex_geometry.hpp>
#include <hurwitzkit/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

namespace hurwitzkit::detail {

/// Square lattice origin + h (i + i j) over an index box; the origin is the source node.
struct Lattice {
    CPoint origin;
    double h;
    int imin, imax, jmin, jmax;

    int width() const noexcept { return imax - imin + 1; }
    int height() const noexcept { return jmax - jmin + 1; }
    std::size_t node_count() const noexcept { return static_cast<std::size_t>(width()) * static_cast<std::size_t>(height()); }
    std::size_t index(int i, int j) const noexcept
    {
        return static_cast<std::size_t>(j - jmin) * static_cast<std::size_t>(width()) + static_cast<std::size_t>(i - imin);
    }
    CPoint point(int i, int j) const noexcept { return origin + h * CPoint(i, j); }
    bool on_rim(int i, int j) const noexcept { return i == imin || i == imax || j == jmin || j == jmax; }
};

struct LatticePath {
    std::vector<CPoint> points; // source first, target last
    bool touches_rim = false;
};

inline std::vector<std::pair<int, int>> stencil_offsets(int order)
{
    std::vector<std::pair<int, int>> out{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    if (order == 16) {
        for (auto [a, b] : {std::pair{1, 2}, {2, 1}, {-1, 2}, {-2, 1}, {-1, -2}, {-2, -1}, {1, -2}, {2, -1}})
            out.emplace_back(a, b);
    }
    return out;
}

/// Dijkstra from the lattice origin to `target` (joined to lattice nodes within 2h).
/// node_ok/edge_ok gate the graph; weight(a, b) is the edge cost, +inf or a thrown Error drops the edge.
template <class NodeOk, class EdgeOk, class Weight>
std::optional<LatticePath> lattice_dijkstra(const Lattice& lat, int stencil, CPoint target, NodeOk&& node_ok, EdgeOk&& edge_ok,
                                            Weight&& weight)
{
    const std::size_t n = lat.node_count();
    const std::size_t target_id = n;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n + 1, inf);
    std::vector<std::int64_t> prev(n + 1, -1);
    std::vector<signed char> valid(n, -1);
    const std::size_t source = lat.index(0, 0);

    auto is_valid = [&](int i, int j) {
        auto& v = valid[lat.index(i, j)];
        if (v < 0)
            v = (i == 0 && j == 0) || node_ok(lat.point(i, j)) ? 1 : 0;
        return v == 1;
    };
    auto cost = [&](CPoint a, CPoint b) {
        if (!edge_ok(a, b))
            return inf;
        try {
            return weight(a, b);
        } catch (const Error&) {
            return inf;
        }
    };

    // lattice nodes close enough to the target to carry a closing edge
    const int ti = static_cast<int>(std::floor((target - lat.origin).real() / lat.h));
    const int tj = static_cast<int>(std::floor((target - lat.origin).imag() / lat.h));
    std::vector<std::pair<std::size_t, double>> to_target;
    for (int j = tj - 2; j <= tj + 3; ++j)
        for (int i = ti - 2; i <= ti + 3; ++i) {
            if (i < lat.imin || i > lat.imax || j < lat.jmin || j > lat.jmax || !is_valid(i, j))
                continue;
            const CPoint p = lat.point(i, j);
            if (std::abs(p - target) > 2.0 * lat.h)
                continue;
            const double c = cost(p, target);
            if (std::isfinite(c))
                to_target.emplace_back(lat.index(i, j), c);
        }
    if (to_target.empty())
        return std::nullopt;
    std::vector<double> closing(n, inf);
    for (auto [id, c] : to_target)
        closing[id] = c;

    const auto offsets = stencil_offsets(stencil);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[source] = 0.0;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        const auto [d, id] = queue.top();
        queue.pop();
        if (d > dist[id])
            continue;
        if (id == target_id)
            break;
        if (closing[id] < inf && d + closing[id] < dist[target_id]) {
            dist[target_id] = d + closing[id];
            prev[target_id] = static_cast<std::int64_t>(id);
            queue.emplace(dist[target_id], target_id);
        }
        const int i = lat.imin + static_cast<int>(id % static_cast<std::size_t>(lat.width()));
        const int j = lat.jmin + static_cast<int>(id / static_cast<std::size_t>(lat.width()));
        const CPoint p = lat.point(i, j);
        for (auto [di, dj] : offsets) {
            const int a = i + di;
            const int b = j + dj;
            if (a < lat.imin || a > lat.imax || b < lat.jmin || b > lat.jmax || !is_valid(a, b))
                continue;
            const std::size_t nid = lat.index(a, b);
            if (d >= dist[nid])
                continue;
            const double c = cost(p, lat.point(a, b));
            if (d + c < dist[nid]) {
                dist[nid] = d + c;
                prev[nid] = static_cast<std::int64_t>(id);
                queue.emplace(dist[nid], nid);
            }
        }
    }
    if (!std::isfinite(dist[target_id]))
        return std::nullopt;

    LatticePath out;
    out.points.push_back(target);
    for (std::int64_t id = prev[target_id]; id >= 0; id = prev[static_cast<std::size_t>(id)]) {
        const auto u = static_cast<std::size_t>(id);
        const int i = lat.imin + static_cast<int>(u % static_cast<std::size_t>(lat.width()));
        const int j = lat.jmin + static_cast<int>(u / static_cast<std::size_t>(lat.width()));
        out.points.push_back(lat.point(i, j));
        out.touches_rim = out.touches_rim || lat.on_rim(i, j);
    }
    std::reverse(out.points.begin(), out.points.end());
    out.points.front() = lat.origin;
    return out;
}

} // namespace hurwitzkit::detail
