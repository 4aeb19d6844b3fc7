#include "nighedge/path_io.hpp"

#include "nighedge/error.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace nighedge {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

double parse_double(std::string_view field, std::size_t line, const char* what) {
    // from_chars rejects a leading '+'
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(std::string("invalid ") + what + " '" + std::string(field) + "'", line);
    return value;
}

// YYYY-MM-DD -> comparable integer yyyymmdd
long parse_iso_date(std::string_view field, std::size_t line) {
    auto digits = [&](std::string_view part) {
        long v = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size()) return -1L;
        return v;
    };
    if (field.size() != 10 || field[4] != '-' || field[7] != '-')
        throw ParseError("invalid ISO date '" + std::string(field) + "'", line);
    const long y = digits(field.substr(0, 4));
    const long m = digits(field.substr(5, 2));
    const long d = digits(field.substr(8, 2));
    if (y < 0 || m < 1 || m > 12 || d < 1 || d > 31)
        throw ParseError("invalid ISO date '" + std::string(field) + "'", line);
    return y * 10000 + m * 100 + d;
}

}  // namespace

std::string format_g12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

PricePath read_price_csv(std::istream& in, double horizon) {
    if (!(horizon > 0.0)) throw InvalidInput("horizon must be > 0");

    enum class TimeColumn { time, date };
    TimeColumn kind = TimeColumn::time;
    bool have_header = false;
    std::vector<double> times;
    std::vector<long> dates;
    std::vector<double> prices;

    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view row = trim(raw);
        if (row.empty()) continue;
        const auto comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
            throw ParseError("expected exactly two comma-separated columns", line);
        const std::string_view first = trim(row.substr(0, comma));
        const std::string_view second = trim(row.substr(comma + 1));

        if (!have_header) {
            const std::string h0 = lower(first);
            const std::string h1 = lower(second);
            if (h1 != "close" || (h0 != "time" && h0 != "date"))
                throw ParseError("header must be 'time,close' or 'date,close'", line);
            kind = h0 == "time" ? TimeColumn::time : TimeColumn::date;
            have_header = true;
            continue;
        }

        if (kind == TimeColumn::time) {
            times.push_back(parse_double(first, line, "time"));
            if (times.size() > 1 && !(times.back() > times[times.size() - 2]))
                throw ParseError("times must be strictly increasing", line);
        } else {
            dates.push_back(parse_iso_date(first, line));
            if (dates.size() > 1 && !(dates.back() > dates[dates.size() - 2]))
                throw ParseError("dates must be strictly increasing", line);
        }
        const double close = parse_double(second, line, "close");
        if (!(close > 0.0)) throw ParseError("close must be > 0", line);
        prices.push_back(close);
    }
    if (!have_header) throw ParseError("empty price file", line);
    if (prices.empty()) throw ParseError("no price rows", line);

    PricePath path;
    if (kind == TimeColumn::date) {
        path = PricePath::equally_spaced(std::move(prices), horizon);
    } else {
        path.times = std::move(times);
        path.prices = std::move(prices);
        path.horizon = horizon;
    }
    try {
        path.validate();
    } catch (const InvalidInput& e) {
        throw ParseError(e.what(), 0);
    }
    return path;
}

void write_price_csv(std::ostream& out, const PricePath& path) {
    out << "time,close\n";
    char buf[96];
    for (std::size_t k = 0; k < path.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", path.times[k], path.prices[k]);
        out << buf;
    }
}

void write_hedge_csv(std::ostream& out, std::span<const HedgeRecord> records) {
    out << "t,strike,xi,theta,H,E\n";
    for (const HedgeRecord& r : records) {
        out << format_g12(r.t) << ',' << format_g12(r.strike) << ',' << format_g12(r.xi) << ','
            << format_g12(r.theta) << ',' << format_g12(r.H) << ',' << format_g12(r.E) << '\n';
    }
}

}  // namespace nighedge
