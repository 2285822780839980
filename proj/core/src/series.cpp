#include "sfpsd/errors.hpp"
#include "sfpsd/series.hpp"

namespace sfpsd {

void SeriesControl::validate() const {
  if (!(rel_eps > 0.0)) throw DomainError("SeriesControl: rel_eps must be positive");
  if (!(abs_eps >= 0.0)) throw DomainError("SeriesControl: abs_eps must be nonnegative");
  if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be at least 1");
}

}  // namespace sfpsd
