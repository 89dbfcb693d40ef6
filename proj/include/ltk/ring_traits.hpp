#pragma once

// Small adapters so the generic series code can ask every coefficient type the
// same questions: can a term be dropped, is it a unit, what is its inverse.

#include <cstdlib>

#include "ltk/laurent.hpp"
#include "ltk/padic.hpp"
#include "ltk/witt.hpp"

namespace ltk {

template <class R>
using elem_t = decltype(std::declval<const R&>().zero());

inline bool drop_zero(const WittElem& a) { return a.is_zero(); }
inline bool drop_zero(const Padic& a) { return a.exact_zero(); }
inline bool drop_zero(const LaurentSeries& a) { return a.x_prec() == a.ring().hi() && a.is_zero(); }

inline bool unit_elem(const WittElem& a) { return a.is_unit(); }
inline bool unit_elem(const Padic& a) { return a.rel_precision() > 0 && a.valuation() == 0; }
inline bool unit_elem(const LaurentSeries& a) { return a.unit_degree() != kInfinity; }

inline WittElem inverse_elem(const WittElem& a) { return a.inverse(); }
inline Padic inverse_elem(const Padic& a) { return a.inverse(); }
inline LaurentSeries inverse_elem(const LaurentSeries& a) { return ls_invert(a); }

/// Lower is a better Gaussian pivot (less precision lost on inversion).
inline int pivot_score(const WittElem& a) { return a.valuation(); }
inline int pivot_score(const Padic& a) { return a.valuation(); }
inline int pivot_score(const LaurentSeries& a) { return a.unit_degree() == kInfinity ? kInfinity : std::abs(a.unit_degree()); }

inline std::string elem_string(const WittElem& a) { return a.to_string(); }
inline std::string elem_string(const Padic& a) { return a.to_string(); }
inline std::string elem_string(const LaurentSeries& a) { return a.to_string(); }

}  // namespace ltk
