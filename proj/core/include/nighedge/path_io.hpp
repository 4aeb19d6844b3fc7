#pragma once

#include "nighedge/hedging.hpp"

#include <iosfwd>
#include <span>
#include <string>

namespace nighedge {

/// Reads a two-column price CSV. The header selects the time column:
///   time,close  raw fractional years, used as-is
///   date,close  ISO dates (YYYY-MM-DD), row k of n mapped to k T / (n - 1)
/// Throws ParseError carrying the 1-based line number.
PricePath read_price_csv(std::istream& in, double horizon);

// Writes `time,close` with round-trip precision.
void write_price_csv(std::ostream& out, const PricePath& path);

// Writes `t,strike,xi,theta,H,E` with 12 significant digits.
void write_hedge_csv(std::ostream& out, std::span<const HedgeRecord> records);

// printf("%.12g")
std::string format_g12(double x);

}  // namespace nighedge
