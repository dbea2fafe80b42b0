#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "urykit/errors.hpp"
#include "urykit/rat.hpp"

namespace urykit {

/// A finite metric space: labelled points plus an exact symmetric distance
/// matrix. The struct itself does not enforce the metric axioms; use
/// validate_metric for that. Labels carry no semantics.
struct FiniteMetricSpace {
    std::vector<std::string> labels;
    std::vector<std::vector<Rat>> d;

    std::size_t size() const { return labels.size(); }
    const Rat& dist(std::size_t i, std::size_t j) const { return d[i][j]; }
};

/// Default labels "p0", "p1", ...
inline std::vector<std::string> default_labels(std::size_t n, const std::string& prefix = "p") {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(prefix + std::to_string(i));
    return out;
}

inline FiniteMetricSpace make_space(std::vector<std::vector<Rat>> matrix,
                                    std::vector<std::string> labels = {}) {
    FiniteMetricSpace s;
    if (labels.empty())
        labels = default_labels(matrix.size());
    s.labels = std::move(labels);
    s.d = std::move(matrix);
    return s;
}

/// Rejects structurally malformed inputs: wrong shape or negative entries.
/// Axiom violations (asymmetry, zero off-diagonal, triangle failures) are
/// not shape errors; they are reported by validate_metric.
inline void check_shape(const FiniteMetricSpace& s) {
    const std::size_t n = s.labels.size();
    if (s.d.size() != n)
        throw input_error("distance matrix has " + std::to_string(s.d.size()) +
                          " rows for " + std::to_string(n) + " labels");
    for (std::size_t i = 0; i < n; ++i) {
        if (s.d[i].size() != n)
            throw input_error("distance matrix row " + std::to_string(i) + " is not of length " +
                              std::to_string(n));
        for (std::size_t j = 0; j < n; ++j)
            if (s.d[i][j] < 0)
                throw input_error("negative distance at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
    }
}

enum class MetricAxiom { ZeroDiagonal, Symmetry, Positivity, Triangle };

inline const char* axiom_name(MetricAxiom a) {
    switch (a) {
    case MetricAxiom::ZeroDiagonal: return "zero_diagonal";
    case MetricAxiom::Symmetry: return "symmetry";
    case MetricAxiom::Positivity: return "positivity";
    case MetricAxiom::Triangle: return "triangle";
    }
    return "?";
}

/// One violated axiom with its witness points. For Triangle the witness is
/// the triple (i, j, k) with d(i,k) > d(i,j) + d(j,k); lhs/rhs carry the two
/// exact sides of the failed comparison.
struct MetricViolation {
    MetricAxiom axiom;
    std::size_t i = 0, j = 0, k = 0;
    Rat lhs, rhs;
};

struct ValidationReport {
    std::vector<MetricViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every FiniteMetricSpace invariant exactly and enumerates every
/// violation. Throws input_error only for malformed matrices.
inline ValidationReport validate_metric(const FiniteMetricSpace& s) {
    check_shape(s);
    const std::size_t n = s.size();
    ValidationReport report;
    for (std::size_t i = 0; i < n; ++i)
        if (s.d[i][i] != 0)
            report.violations.push_back({MetricAxiom::ZeroDiagonal, i, i, i, s.d[i][i], Rat(0)});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (s.d[i][j] != s.d[j][i])
                report.violations.push_back({MetricAxiom::Symmetry, i, j, j, s.d[i][j], s.d[j][i]});
            if (s.d[i][j] == 0)
                report.violations.push_back({MetricAxiom::Positivity, i, j, j, s.d[i][j], Rat(0)});
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || j == k)
                    continue;
                Rat via = s.d[i][j] + s.d[j][k];
                if (s.d[i][k] > via)
                    report.violations.push_back({MetricAxiom::Triangle, i, j, k, s.d[i][k], via});
            }
    return report;
}

/// Sorted set of distances occurring between distinct points.
inline std::vector<Rat> spectrum(const FiniteMetricSpace& s) {
    std::set<Rat> values;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            values.insert(s.d[i][j]);
    return std::vector<Rat>(values.begin(), values.end());
}

/// d(i,k) <= max(d(i,j), d(j,k)) for all triples, checked exactly.
inline bool is_ultrametric(const FiniteMetricSpace& s) {
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || j == k)
                    continue;
                if (s.d[i][k] > std::max(s.d[i][j], s.d[j][k]))
                    return false;
            }
    return true;
}

/// Exact equality of labels and matrices.
inline bool spaces_equal(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    return a.labels == b.labels && a.d == b.d;
}

/// True iff a's matrix is the leading principal submatrix of b's.
inline bool is_initial_segment(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    if (a.size() > b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.labels[i] != b.labels[i])
            return false;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (a.d[i][j] != b.d[i][j])
                return false;
    }
    return true;
}

/// Copy of s with every distance multiplied by factor > 0.
inline FiniteMetricSpace scale_space(const FiniteMetricSpace& s, const Rat& factor) {
    if (factor <= 0)
        throw input_error("scale factor must be positive");
    FiniteMetricSpace out = s;
    for (auto& row : out.d)
        for (auto& v : row)
            v *= factor;
    return out;
}

} // namespace urykit
