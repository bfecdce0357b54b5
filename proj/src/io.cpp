#include "tempus/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tempus {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::PhaseJump: return "PhaseJump";
    case ErrorCode::ZeroResponse: return "ZeroResponse";
    case ErrorCode::ResolventSingular: return "ResolventSingular";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoProgress: return "NoProgress";
    case ErrorCode::DenominatorCollapse: return "DenominatorCollapse";
    case ErrorCode::GridGap: return "GridGap";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NoBarrier: return "NoBarrier";
    case ErrorCode::QuadratureFail: return "QuadratureFail";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NoPeak: return "NoPeak";
    case ErrorCode::AtPole: return "AtPole";
    case ErrorCode::MissingParameter: return "MissingParameter";
    case ErrorCode::NonPhysical: return "NonPhysical";
    case ErrorCode::InconsistentRelations: return "InconsistentRelations";
    case ErrorCode::InputFormat: return "InputFormat";
    case ErrorCode::Usage: return "Usage";
    }
    return "UnknownError";
}

int exit_class(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Usage:
        return 2;
    case ErrorCode::InputFormat:
        return 3;
    default:
        return 4;
    }
}

std::string fmt_float(double v, int precision)
{
    if (precision < 6)
        precision = 6;
    if (precision > 17)
        precision = 17;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

namespace {

std::string trim(const std::string& s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

[[noreturn]] void bad_row(const std::string& name, std::size_t line,
                          const std::string& what)
{
    fail(ErrorCode::InputFormat,
         name + ": line " + std::to_string(line) + ": " + what);
}

// Split a CSV row and parse every field as a double; the expected count and
// the 1-based line number feed the error message.
std::vector<double> parse_row(const std::string& name, std::size_t line,
                              const std::string& row, std::size_t fields)
{
    std::vector<double> out;
    std::stringstream ss(row);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell = trim(cell);
        if (cell.empty())
            bad_row(name, line, "empty field");
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (end != cell.c_str() + cell.size())
            bad_row(name, line, "unparseable number '" + cell + "'");
        if (!std::isfinite(v))
            bad_row(name, line, "non-finite value '" + cell + "'");
        out.push_back(v);
    }
    if (out.size() != fields)
        bad_row(name, line,
                "expected " + std::to_string(fields) + " fields, got " +
                    std::to_string(out.size()));
    return out;
}

void expect_header(const std::string& name, std::istream& is,
                   const std::string& want, std::size_t& line)
{
    std::string head;
    if (!std::getline(is, head))
        bad_row(name, 1, "empty file");
    ++line;
    // Normalize spaces so "omega, re, im" still matches.
    std::string squeezed;
    for (char c : head)
        if (!std::isspace(static_cast<unsigned char>(c)))
            squeezed += c;
    if (squeezed != want)
        bad_row(name, 1, "header must be '" + want + "'");
}

} // namespace

SampledResponse read_sampled_response(std::istream& is, const std::string& name)
{
    std::size_t line = 0;
    expect_header(name, is, "omega,re,im", line);

    SampledResponse data;
    std::string row;
    while (std::getline(is, row)) {
        ++line;
        if (trim(row).empty())
            continue;
        const std::vector<double> v = parse_row(name, line, row, 3);
        if (!data.omega.empty() && !(v[0] > data.omega.back()))
            bad_row(name, line, "omega must be strictly increasing");
        if (v[1] == 0.0 && v[2] == 0.0)
            bad_row(name, line, "response value is exactly zero");
        data.omega.push_back(v[0]);
        data.value.emplace_back(v[1], v[2]);
    }
    if (data.omega.size() < 5)
        fail(ErrorCode::InputFormat,
             name + ": need at least 5 data rows, got " +
                 std::to_string(data.omega.size()));
    return data;
}

SampledResponse load_sampled_response(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        fail(ErrorCode::InputFormat, path + ": cannot open");
    return read_sampled_response(is, path);
}

void write_temporal_csv(std::ostream& os, const TemporalFunction& tf,
                        int precision)
{
    os << "omega,tau1,tau2,masked\n";
    for (std::size_t i = 0; i < tf.omega.size(); ++i) {
        os << fmt_float(tf.omega[i], precision) << ','
           << fmt_float(tf.tau1[i], precision) << ','
           << fmt_float(tf.tau2[i], precision) << ','
           << static_cast<int>(tf.masked[i]) << '\n';
    }
}

TemporalFunction read_temporal_csv(std::istream& is, const std::string& name)
{
    std::size_t line = 0;
    expect_header(name, is, "omega,tau1,tau2,masked", line);

    TemporalFunction tf;
    std::string row;
    while (std::getline(is, row)) {
        ++line;
        if (trim(row).empty())
            continue;
        const std::vector<double> v = parse_row(name, line, row, 4);
        if (!tf.omega.empty() && !(v[0] > tf.omega.back()))
            bad_row(name, line, "omega must be strictly increasing");
        if (v[3] != 0.0 && v[3] != 1.0)
            bad_row(name, line, "masked flag must be 0 or 1");
        tf.omega.push_back(v[0]);
        tf.tau1.push_back(v[1]);
        tf.tau2.push_back(v[2]);
        tf.masked.push_back(static_cast<unsigned char>(v[3]));
    }
    if (tf.omega.empty())
        fail(ErrorCode::InputFormat, name + ": no data rows");
    return tf;
}

} // namespace tempus
