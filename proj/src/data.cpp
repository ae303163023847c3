#include "mhdwild/data.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mhdwild {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

bool interiors_overlap(const Rect& a, const Rect& b) {
    return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

}  // namespace

void validate(const PiecewiseData& data) {
    if (!(data.Lx > 0.0) || !(data.Ly > 0.0))
        throw std::invalid_argument("domain lengths must be > 0");
    if (!(data.T > 0.0)) throw std::invalid_argument("T must be > 0");
    if (!(data.gamma > 1.0))
        throw std::invalid_argument("gamma must be > 1, got " + fmt(data.gamma));
    if (data.pieces.empty()) throw std::invalid_argument("at least one piece required");

    const double eps = 1e-12 * data.Lx * data.Ly;
    double area = 0.0;
    for (std::size_t i = 0; i < data.pieces.size(); ++i) {
        const Piece& pc = data.pieces[i];
        const std::string tag = "piece " + std::to_string(i + 1);
        if (!(pc.rho > 0.0)) throw std::invalid_argument(tag + ": rho must be > 0");
        if (!(pc.p > 0.0)) throw std::invalid_argument(tag + ": p must be > 0");
        if (!std::isfinite(pc.b)) throw std::invalid_argument(tag + ": b must be finite");
        if (!(pc.box.width() > 0.0) || !(pc.box.height() > 0.0))
            throw std::invalid_argument(tag + ": rectangle must have positive area");
        if (pc.box.x0 < -eps || pc.box.y0 < -eps || pc.box.x1 > data.Lx + eps ||
            pc.box.y1 > data.Ly + eps)
            throw std::invalid_argument(tag + ": rectangle exceeds the domain");
        for (std::size_t j = 0; j < i; ++j) {
            if (interiors_overlap(pc.box, data.pieces[j].box))
                throw std::invalid_argument(tag + " overlaps piece " + std::to_string(j + 1));
        }
        area += pc.box.area();
    }
    if (std::abs(area - data.Lx * data.Ly) > eps)
        throw std::invalid_argument("pieces do not tile the domain: area " + fmt(area) +
                                    " vs " + fmt(data.Lx * data.Ly));
}

std::vector<double> compute_c_constants(const std::vector<Piece>& pieces, double lambda) {
    std::vector<double> c;
    c.reserve(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const double half_b2 = 0.5 * pieces[i].b * pieces[i].b;
        const double ci = lambda - pieces[i].p - half_b2;
        if (!(lambda > pieces[i].p + half_b2)) {
            throw std::invalid_argument("piece " + std::to_string(i + 1) +
                                        " requires Lambda > " + fmt(pieces[i].p + half_b2));
        }
        c.push_back(ci);
    }
    return c;
}

std::vector<double> compute_c_constants(const PiecewiseData& data, double lambda) {
    return compute_c_constants(data.pieces, lambda);
}

int piece_at(const PiecewiseData& data, double x, double y) {
    for (std::size_t i = 0; i < data.pieces.size(); ++i) {
        if (data.pieces[i].box.contains(x, y)) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace mhdwild
