#pragma once

#include <string>
#include <vector>

#include "qmzv/connect.hpp"
#include "qmzv/params.hpp"

namespace qmzv {

/// Everything a reader needs to reproduce a run: exact rational inputs plus
/// the discrete knobs.
struct ParamsSnapshot {
    std::string q;
    std::string xi;
    std::string eta;
    long prec_bits = 192;
    long max_terms = 1L << 16;
    int lambda_order = 6;
    std::string tolerance;  // harness slack, exact rational text

    static ParamsSnapshot of(const Params& p, int lambda_order, const Rat& tolerance);
};

struct Report {
    std::string command;
    ParamsSnapshot params;
    std::vector<Residual> cases;
    double wall_time = 0;

    int passes() const;
    int failures() const;
};

/// Deterministic serialization: key order fixed, Real fields as lossless
/// decimal strings, wall_time last.  Two runs with identical inputs differ
/// at most in the wall_time line.
std::string report_to_json(const Report& r);

/// Inverse of report_to_json; Real fields are re-read at params.prec_bits.
Report report_from_json(const std::string& text);

}  // namespace qmzv
