#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "contact_optics/geometry.hpp"

namespace contact_optics {

struct CheckRecord {
    std::string name;
    GeometryKind geometry = GeometryKind::Euclidean2;
    double n = 1.0;
    std::size_t samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<CheckRecord> records;

    [[nodiscard]] bool all_pass() const;
    /// One line per record; identical reports render identically.
    [[nodiscard]] std::string to_text() const;
};

struct CheckOptions {
    /// Added to every fiber rate of the Reeb field before verification. Non-zero
    /// values exist only to confirm that the suite detects a wrong field.
    double reeb_fiber_perturbation = 0.0;
    /// OpenMP workers; <= 0 uses the OpenMP default.
    int threads = 0;
};

/// Runs the contact-structure invariant battery over seeded random states for
/// every geometry and n in {1, 1.33, 2}. Deterministic given `seed`.
VerificationReport run_checks(std::uint64_t seed, std::size_t samples, const CheckOptions& options = {});

}  // namespace contact_optics
