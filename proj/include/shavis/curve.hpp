#ifndef SHAVIS_CURVE_HPP
#define SHAVIS_CURVE_HPP

#include <array>
#include <optional>
#include <string>

#include "shavis/integers.hpp"

namespace shavis {

// Change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct Isomorphism {
    Rat u = 1;
    Rat r = 0, s = 0, t = 0;

    static Isomorphism identity() { return {}; }
    static Isomorphism scaling(const Rat& u) { return {u, 0, 0, 0}; }

    // this followed by other
    Isomorphism compose(const Isomorphism& other) const;
    Isomorphism inverse() const;
    bool operator==(const Isomorphism&) const = default;
};

// Weierstrass model over Q, possibly non-integral.
struct ModelQ {
    Rat a1, a2, a3, a4, a6;

    Rat b2() const { return a1 * a1 + 4 * a2; }
    Rat b4() const { return 2 * a4 + a1 * a3; }
    Rat b6() const { return a3 * a3 + 4 * a6; }
    Rat b8() const;
    Rat c4() const;
    Rat c6() const;
    Rat disc() const;
    bool integral() const;
    bool operator==(const ModelQ&) const = default;
};

ModelQ transform_model(const ModelQ& m, const Isomorphism& iso);

// Integral Weierstrass curve over Q with cached invariants.
class CurveQ {
  public:
    // Throws SingularCurveError if disc = 0.
    static CurveQ from_ainvs(const Int& a1, const Int& a2, const Int& a3,
                             const Int& a4, const Int& a6,
                             std::string label = {});
    static CurveQ from_model(const ModelQ& m, std::string label = {});

    const Int& a1() const { return a_[0]; }
    const Int& a2() const { return a_[1]; }
    const Int& a3() const { return a_[2]; }
    const Int& a4() const { return a_[3]; }
    const Int& a6() const { return a_[4]; }
    const std::array<Int, 5>& ainvs() const { return a_; }

    const Int& b2() const { return b2_; }
    const Int& b4() const { return b4_; }
    const Int& b6() const { return b6_; }
    const Int& b8() const { return b8_; }
    const Int& c4() const { return c4_; }
    const Int& c6() const { return c6_; }
    const Int& disc() const { return disc_; }
    const Int& j_num() const { return j_num_; }
    const Int& j_den() const { return j_den_; }
    Rat j_invariant() const { return Rat(j_num_) / j_den_; }

    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    ModelQ model() const;

    bool operator==(const CurveQ& o) const { return a_ == o.a_; }
    bool operator!=(const CurveQ& o) const { return a_ != o.a_; }

    std::string str() const;

  private:
    CurveQ() = default;
    std::array<Int, 5> a_;
    Int b2_, b4_, b6_, b8_, c4_, c6_, disc_, j_num_, j_den_;
    std::string label_;
};

// Integral transform; throws NonIntegralResultError when the image model is
// not integral and require_integral is set.
CurveQ transform(const CurveQ& c, const Isomorphism& iso,
                 bool require_integral = true);

// Clear denominators of a rational model by an admissible u-scaling.
// Returns the integral curve and the isomorphism from m to it.
std::pair<CurveQ, Isomorphism> integralize(const ModelQ& m);

// Global minimal model (Laska-Kraus-Connell) in standard form
// (a1,a3 in {0,1}, a2 in {-1,0,1}) plus the isomorphism input -> output.
std::pair<CurveQ, Isomorphism> minimal_model(const CurveQ& c);

// Short Weierstrass integral model y^2 = x^3 - 27 c4 x - 54 c6 (u = 1/6
// admissible transform), or the curve itself when already short.
// Returns the model and the isomorphism from c to it.
std::pair<CurveQ, Isomorphism> short_model(const CurveQ& c);

} // namespace shavis

#endif
