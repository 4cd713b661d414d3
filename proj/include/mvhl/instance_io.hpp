#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mvhl/measurement.hpp"
#include "mvhl/types.hpp"

namespace mvhl {

// A solvable problem instance: measurements, per-channel sensing subspaces,
// and (optionally) the ground-truth data matrices.
struct Instance {
    Index s = 1;                  // subspace dimension
    Index n = 1;                  // measurement length
    SubspaceEnsemble subspaces;   // K matrices, each n×s
    CVec y;                       // length n
    std::vector<CMat> truth;      // empty, or one s×n matrix per channel
};

// Canonical text form "re+imj" with round-trip-exact doubles.
std::string format_complex(Complex z);
// Accepts the canonical form plus pure-real ("1.5") and pure-imaginary
// ("2j") tokens; throws std::invalid_argument on anything else.
Complex parse_complex(const std::string& token);

// Plain-text container with sections [shape], [y], [B_1]..[B_K] and optional
// [X_1]..[X_K].  Parse failures throw std::runtime_error prefixed with
// "<origin>:<line>:" and name the offending field.
Instance parse_instance(std::istream& in, const std::string& origin);
Instance read_instance(const std::string& path);
void write_instance(std::ostream& out, const Instance& inst);
void write_instance(const std::string& path, const Instance& inst);

}  // namespace mvhl
