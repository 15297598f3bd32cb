#ifndef SHAVIS_LOCALDATA_HPP
#define SHAVIS_LOCALDATA_HPP

#include <string>
#include <vector>

#include "shavis/curve.hpp"
#include "shavis/integers.hpp"

namespace shavis {

enum class KodairaKind { I, II, III, IV, Istar, IIstar, IIIstar, IVstar };

struct KodairaType {
    KodairaKind kind = KodairaKind::I;
    int n = 0;  // index for I_n / I_n*

    static KodairaType In(int n) { return {KodairaKind::I, n}; }
    static KodairaType Instar(int n) { return {KodairaKind::Istar, n}; }
    std::string str() const;
    static KodairaType parse(const std::string& s);
    bool operator==(const KodairaType&) const = default;
};

enum class ReductionKind { good, split_multiplicative, nonsplit_multiplicative, additive };

std::string reduction_kind_str(ReductionKind k);
ReductionKind reduction_kind_parse(const std::string& s);

struct LocalData {
    Int p;
    KodairaType kodaira;
    int f_p = 0;          // conductor exponent
    Int c_p = 1;          // Tamagawa number
    ReductionKind kind = ReductionKind::good;
    int v_delta = 0;      // valuation of the minimal discriminant
    Int phi_order = 1;    // component group order over the algebraic closure
};

// Tate's algorithm at p; c must be minimal at p.
LocalData tate_local(const CurveQ& c, const Int& p);

// Conductor N = prod p^{f_p} of the minimal model.
Int conductor(const CurveQ& c);

// (semistable?, additive primes)
std::pair<bool, std::vector<Int>> is_semistable(const CurveQ& c);

// prod c_p over bad primes of the minimal model (empty product = 1).
Int tamagawa_product(const CurveQ& c);
Int tamagawa_product(const std::vector<LocalData>& locals);

// All bad-prime local data of the minimal model, sorted by p.
std::vector<LocalData> local_data(const CurveQ& c);

} // namespace shavis

#endif
