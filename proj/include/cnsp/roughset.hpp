#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cnsp {

// Rough-set decision table S = (U, A, V, f) over discretized window
// features. `codes` realizes f: U x A -> V on discrete bin codes (used for
// indiscernibility); `raw` keeps the normalized values in [0, 1] the
// screening scores are computed on. Both tables are row-major
// objects x attributes.
struct InformationSystem {
    std::vector<std::string> objects;    // U, ordered ids
    std::vector<std::string> attributes; // A, ordered names
    std::vector<int> codes;
    std::vector<double> raw;

    std::size_t object_count() const { return objects.size(); }
    std::size_t attribute_count() const { return attributes.size(); }

    int code(std::size_t obj, std::size_t attr) const {
        return codes[obj * attributes.size() + attr];
    }
    double raw_value(std::size_t obj, std::size_t attr) const {
        return raw[obj * attributes.size() + attr];
    }

    // Resolves an attribute name; throws ArgumentError when unknown.
    std::size_t attribute_index(std::string_view name) const;

    // Structural checks: table shapes match, raw values lie in [0, 1].
    void validate() const;
};

// Target set X as a membership mask aligned with the universe.
struct TargetSet {
    std::vector<bool> mask;

    static TargetSet from_indices(std::size_t universe_size, std::span<const std::size_t> members);
    std::size_t count() const;
};

struct NormalizeResult {
    std::vector<double> values;
    bool constant = false; // max == min; all outputs 0.0, worth a warning
};

// Affine map of [min, max] onto [0, 1]. A constant attribute yields all
// zeros with the `constant` flag set instead of failing: a flat sensor
// channel should not abort a session.
NormalizeResult normalize_attribute(std::span<const double> values);

// Equal-width binning of normalized values: code = min(floor(v*bins), bins-1).
std::vector<int> discretize(std::span<const double> normalized, int bins);

// Equivalence classes of IND(B): objects sharing codes on every attribute
// in B fall into one block. Blocks are reported in first-occurrence order.
std::vector<std::vector<std::size_t>> indiscernibility_classes(
    const InformationSystem& system, std::span<const std::size_t> attrs);
std::vector<std::vector<std::size_t>> indiscernibility_classes(
    const InformationSystem& system, std::span<const std::string> attr_names);

// Lower approximation POS_B(X): union of IND(B) blocks fully contained in
// X, returned as a mask over the universe. An empty B treats all of U as
// one block (POS is U when X = U, empty otherwise), which keeps importance
// well-defined for single-attribute systems.
std::vector<bool> positive_region(const InformationSystem& system,
                                  std::span<const std::size_t> attrs, const TargetSet& target);

// Dependence degree |POS_B(X)| / |U|.
double dependence(const InformationSystem& system, std::span<const std::size_t> attrs,
                  const TargetSet& target);

// Attribute significance: (|POS_B(X)| - |POS_{B-{a}}(X)|) / |U|.
// Removing an attribute can only coarsen the partition, so the result is
// always in [0, 1]. `attr` must be a member of `attrs`.
double importance(const InformationSystem& system, std::span<const std::size_t> attrs,
                  std::size_t attr, const TargetSet& target);

// How the per-attribute dependence rho_a is read: `single` uses B = {a}
// (each attribute on its own), `full` uses B = A (one constant shared by
// every attribute, the literal formula).
enum class DependenceMode { single, full };

DependenceMode dependence_mode_from_string(std::string_view text); // throws ConfigError
std::string_view to_string(DependenceMode mode);

// Per-attribute dependence, importance, and the combined weights
// omega_a = alpha * rho_a + beta * gamma_a with alpha + beta = 1.
struct AttributeWeights {
    std::vector<std::string> attributes;
    std::vector<double> rho;
    std::vector<double> gamma;
    std::vector<double> omega;
    std::vector<double> omega_norm;
    double alpha = 0.5;
    double beta = 0.5;
    bool uniform_fallback = false; // all omegas were zero
};

AttributeWeights attribute_weights(const InformationSystem& system, const TargetSet& target,
                                   double alpha, double beta,
                                   DependenceMode mode = DependenceMode::single);

struct NormalizedWeights {
    std::vector<double> values;
    bool uniform_fallback = false;
};

// omega' = omega / sum(omega); a zero-mass vector falls back to uniform
// 1/|A| weights with the flag set so screening stays total.
NormalizedWeights normalize_weights(std::span<const double> omegas);

// Screened set X' = { x in U | sum_a omega'_a * raw(x, a) >= theta }.
struct ScreenResult {
    std::vector<std::size_t> selected; // universe order
    std::vector<double> scores;        // per object, in [0, 1]
    double theta = 0.5;
};

ScreenResult screen(const InformationSystem& system, const AttributeWeights& weights, double theta);

// Decision-table CSV: header `object,<attr1>,...,<attrK>,label`, codes as
// unsigned decimal integers, label in {0,1} marking membership in X. On
// import the raw table is rebuilt by normalizing each code column, so
// screening scores stay on [0, 1].
struct DecisionTable {
    InformationSystem system;
    TargetSet target;
};

DecisionTable read_decision_csv(std::istream& in);
void write_decision_csv(std::ostream& out, const InformationSystem& system, const TargetSet& target);

} // namespace cnsp
