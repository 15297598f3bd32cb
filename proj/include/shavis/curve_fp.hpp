#ifndef SHAVIS_CURVE_FP_HPP
#define SHAVIS_CURVE_FP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "shavis/curve.hpp"
#include "shavis/integers.hpp"

namespace shavis {

// Affine point or the identity marker.
struct PointFp {
    bool infinity = true;
    uint64_t x = 0, y = 0;

    static PointFp zero() { return {}; }
    static PointFp affine(uint64_t x, uint64_t y) { return {false, x, y}; }
    bool operator==(const PointFp&) const = default;
};

// Reduction of an integral model mod p (p < 2^62).
class CurveFp {
  public:
    CurveFp(uint64_t p, uint64_t a1, uint64_t a2, uint64_t a3, uint64_t a4,
            uint64_t a6, bool singular);

    uint64_t p() const { return p_; }
    bool singular() const { return singular_; }
    uint64_t a1() const { return a_[0]; }
    uint64_t a2() const { return a_[1]; }
    uint64_t a3() const { return a_[2]; }
    uint64_t a4() const { return a_[3]; }
    uint64_t a6() const { return a_[4]; }

    bool contains(const PointFp& P) const;
    PointFp negate(const PointFp& P) const;
    // Chord-tangent sum; throws PointNotOnCurveError on bad input.
    PointFp add(const PointFp& P, const PointFp& Q) const;
    PointFp mul(const PointFp& P, uint64_t k) const;

    // All points, by enumeration (small p only).
    std::vector<PointFp> enumerate() const;

  private:
    uint64_t p_;
    uint64_t a_[5];
    bool singular_;
};

// Reduce a curve minimal at p; singular flag iff p | disc.
CurveFp reduce_mod_p(const CurveQ& c, const Int& p);

} // namespace shavis

#endif
