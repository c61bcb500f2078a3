#include "cnsp/roughset.hpp"

#include "cnsp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace cnsp {

std::size_t InformationSystem::attribute_index(std::string_view name) const {
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        if (attributes[i] == name) return i;
    }
    throw ArgumentError("unknown attribute: " + std::string(name));
}

void InformationSystem::validate() const {
    const std::size_t cells = objects.size() * attributes.size();
    if (codes.size() != cells || raw.size() != cells) {
        throw ArgumentError("information system tables do not match universe x attributes shape");
    }
    for (double v : raw) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ArgumentError("raw values must lie in [0, 1]");
        }
    }
}

TargetSet TargetSet::from_indices(std::size_t universe_size, std::span<const std::size_t> members) {
    TargetSet target;
    target.mask.assign(universe_size, false);
    for (std::size_t idx : members) {
        if (idx >= universe_size) {
            throw ArgumentError("target member " + std::to_string(idx) + " outside universe");
        }
        target.mask[idx] = true;
    }
    return target;
}

std::size_t TargetSet::count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

NormalizeResult normalize_attribute(std::span<const double> values) {
    if (values.empty()) {
        throw ArgumentError("normalize_attribute: empty input");
    }
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    NormalizeResult result;
    result.values.reserve(values.size());
    if (*min_it == *max_it) {
        result.constant = true;
        result.values.assign(values.size(), 0.0);
        return result;
    }
    const double lo = *min_it;
    const double range = *max_it - lo;
    for (double v : values) {
        result.values.push_back((v - lo) / range);
    }
    return result;
}

std::vector<int> discretize(std::span<const double> normalized, int bins) {
    if (bins < 2) {
        throw ConfigError("bins must be >= 2, got " + std::to_string(bins));
    }
    std::vector<int> codes;
    codes.reserve(normalized.size());
    for (double v : normalized) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ArgumentError("discretize expects values in [0, 1]");
        }
        const int code = static_cast<int>(std::floor(v * bins));
        codes.push_back(std::min(code, bins - 1));
    }
    return codes;
}

namespace {

void check_attrs(const InformationSystem& system, std::span<const std::size_t> attrs) {
    if (attrs.empty()) {
        throw ArgumentError("attribute subset B must be non-empty");
    }
    for (std::size_t a : attrs) {
        if (a >= system.attribute_count()) {
            throw ArgumentError("attribute index " + std::to_string(a) + " out of range");
        }
    }
}

} // namespace

std::vector<std::vector<std::size_t>> indiscernibility_classes(
    const InformationSystem& system, std::span<const std::size_t> attrs) {
    check_attrs(system, attrs);
    // Key = code tuple over B; map preserves nothing, so block order is
    // fixed by first occurrence.
    std::map<std::vector<int>, std::size_t> block_of;
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<int> key(attrs.size());
    for (std::size_t obj = 0; obj < system.object_count(); ++obj) {
        for (std::size_t k = 0; k < attrs.size(); ++k) {
            key[k] = system.code(obj, attrs[k]);
        }
        auto [it, inserted] = block_of.try_emplace(key, blocks.size());
        if (inserted) {
            blocks.emplace_back();
        }
        blocks[it->second].push_back(obj);
    }
    return blocks;
}

std::vector<std::vector<std::size_t>> indiscernibility_classes(
    const InformationSystem& system, std::span<const std::string> attr_names) {
    std::vector<std::size_t> attrs;
    attrs.reserve(attr_names.size());
    for (const std::string& name : attr_names) {
        attrs.push_back(system.attribute_index(name));
    }
    return indiscernibility_classes(system, attrs);
}

std::vector<bool> positive_region(const InformationSystem& system,
                                  std::span<const std::size_t> attrs, const TargetSet& target) {
    const std::size_t n = system.object_count();
    if (target.mask.size() != n) {
        throw ArgumentError("target set size does not match universe");
    }
    std::vector<bool> pos(n, false);
    if (attrs.empty()) {
        // IND(empty B) lumps all of U into one block.
        if (target.count() == n) {
            pos.assign(n, true);
        }
        return pos;
    }
    for (const auto& block : indiscernibility_classes(system, attrs)) {
        const bool contained =
            std::all_of(block.begin(), block.end(), [&](std::size_t obj) { return target.mask[obj]; });
        if (contained) {
            for (std::size_t obj : block) pos[obj] = true;
        }
    }
    return pos;
}

double dependence(const InformationSystem& system, std::span<const std::size_t> attrs,
                  const TargetSet& target) {
    check_attrs(system, attrs);
    const std::size_t n = system.object_count();
    if (n == 0) {
        throw ArgumentError("dependence undefined on an empty universe");
    }
    const auto pos = positive_region(system, attrs, target);
    const auto size = std::count(pos.begin(), pos.end(), true);
    return static_cast<double>(size) / static_cast<double>(n);
}

double importance(const InformationSystem& system, std::span<const std::size_t> attrs,
                  std::size_t attr, const TargetSet& target) {
    check_attrs(system, attrs);
    if (std::find(attrs.begin(), attrs.end(), attr) == attrs.end()) {
        throw ArgumentError("attribute " + std::to_string(attr) + " not in B");
    }
    const std::size_t n = system.object_count();
    if (n == 0) {
        throw ArgumentError("importance undefined on an empty universe");
    }
    std::vector<std::size_t> rest;
    rest.reserve(attrs.size() - 1);
    for (std::size_t a : attrs) {
        if (a != attr) rest.push_back(a);
    }
    const auto pos_full = positive_region(system, attrs, target);
    const auto pos_rest = positive_region(system, rest, target);
    const auto full = std::count(pos_full.begin(), pos_full.end(), true);
    const auto without = std::count(pos_rest.begin(), pos_rest.end(), true);
    return static_cast<double>(full - without) / static_cast<double>(n);
}

DependenceMode dependence_mode_from_string(std::string_view text) {
    if (text == "single") return DependenceMode::single;
    if (text == "full") return DependenceMode::full;
    throw ConfigError("dependence_mode must be 'single' or 'full', got '" + std::string(text) + "'");
}

std::string_view to_string(DependenceMode mode) {
    return mode == DependenceMode::single ? "single" : "full";
}

AttributeWeights attribute_weights(const InformationSystem& system, const TargetSet& target,
                                   double alpha, double beta, DependenceMode mode) {
    if (alpha < 0.0 || beta < 0.0 || std::abs(alpha + beta - 1.0) > 1e-12) {
        throw ConfigError("alpha and beta must be non-negative with alpha + beta = 1");
    }
    system.validate();
    const std::size_t k = system.attribute_count();
    if (k == 0) {
        throw ArgumentError("attribute_weights needs at least one attribute");
    }
    if (system.object_count() == 0) {
        throw ArgumentError("attribute_weights undefined on an empty universe");
    }

    std::vector<std::size_t> all(k);
    for (std::size_t a = 0; a < k; ++a) all[a] = a;
    const double full_dependence = dependence(system, all, target);

    AttributeWeights weights;
    weights.attributes = system.attributes;
    weights.alpha = alpha;
    weights.beta = beta;
    weights.rho.reserve(k);
    weights.gamma.reserve(k);
    weights.omega.reserve(k);
    for (std::size_t a = 0; a < k; ++a) {
        const std::size_t single[] = {a};
        const double rho =
            mode == DependenceMode::single ? dependence(system, single, target) : full_dependence;
        const double gamma = importance(system, all, a, target);
        weights.rho.push_back(rho);
        weights.gamma.push_back(gamma);
        weights.omega.push_back(alpha * rho + beta * gamma);
    }
    NormalizedWeights normed = normalize_weights(weights.omega);
    weights.omega_norm = std::move(normed.values);
    weights.uniform_fallback = normed.uniform_fallback;
    return weights;
}

NormalizedWeights normalize_weights(std::span<const double> omegas) {
    if (omegas.empty()) {
        throw ArgumentError("normalize_weights: empty input");
    }
    double total = 0.0;
    for (double w : omegas) {
        if (w < 0.0) {
            throw ArgumentError("normalize_weights: negative weight");
        }
        total += w;
    }
    NormalizedWeights result;
    result.values.reserve(omegas.size());
    if (total == 0.0) {
        result.uniform_fallback = true;
        result.values.assign(omegas.size(), 1.0 / static_cast<double>(omegas.size()));
        return result;
    }
    for (double w : omegas) {
        result.values.push_back(w / total);
    }
    return result;
}

ScreenResult screen(const InformationSystem& system, const AttributeWeights& weights, double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw ConfigError("theta must lie in [0, 1]");
    }
    system.validate();
    if (weights.omega_norm.size() != system.attribute_count()) {
        throw ArgumentError("weights do not match the system's attributes");
    }
    ScreenResult result;
    result.theta = theta;
    const std::size_t n = system.object_count();
    result.scores.reserve(n);
    for (std::size_t obj = 0; obj < n; ++obj) {
        double score = 0.0;
        for (std::size_t a = 0; a < system.attribute_count(); ++a) {
            score += weights.omega_norm[a] * system.raw_value(obj, a);
        }
        result.scores.push_back(score);
        if (score >= theta) {
            result.selected.push_back(obj);
        }
    }
    return result;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

} // namespace

DecisionTable read_decision_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ArgumentError("decision CSV: missing header");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header.front() != "object" || header.back() != "label") {
        throw ArgumentError("decision CSV: header must be object,<attrs...>,label");
    }

    DecisionTable table;
    table.system.attributes.assign(header.begin() + 1, header.end() - 1);
    const std::size_t k = table.system.attributes.size();

    std::vector<std::vector<double>> columns(k);
    std::vector<bool> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != k + 2) {
            throw ArgumentError("decision CSV line " + std::to_string(line_no) + ": expected " +
                                std::to_string(k + 2) + " fields, got " + std::to_string(fields.size()));
        }
        table.system.objects.push_back(fields[0]);
        for (std::size_t a = 0; a < k; ++a) {
            std::size_t pos = 0;
            int code = 0;
            try {
                code = std::stoi(fields[a + 1], &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != fields[a + 1].size() || code < 0) {
                throw ArgumentError("decision CSV line " + std::to_string(line_no) +
                                    ": bad code '" + fields[a + 1] + "'");
            }
            table.system.codes.push_back(code);
            columns[a].push_back(static_cast<double>(code));
        }
        const std::string& label = fields.back();
        if (label != "0" && label != "1") {
            throw ArgumentError("decision CSV line " + std::to_string(line_no) +
                                ": label must be 0 or 1");
        }
        labels.push_back(label == "1");
    }

    // Rebuild the continuous table from the codes so screening scores stay
    // on [0, 1]; the CSV only carries the discrete side of the system.
    const std::size_t n = table.system.objects.size();
    table.system.raw.assign(n * k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
        if (n == 0) break;
        const auto normed = normalize_attribute(columns[a]);
        for (std::size_t obj = 0; obj < n; ++obj) {
            table.system.raw[obj * k + a] = normed.values[obj];
        }
    }
    table.target.mask = std::move(labels);
    return table;
}

void write_decision_csv(std::ostream& out, const InformationSystem& system, const TargetSet& target) {
    if (target.mask.size() != system.object_count()) {
        throw ArgumentError("target set size does not match universe");
    }
    out << "object";
    for (const std::string& attr : system.attributes) out << ',' << attr;
    out << ",label\n";
    for (std::size_t obj = 0; obj < system.object_count(); ++obj) {
        out << system.objects[obj];
        for (std::size_t a = 0; a < system.attribute_count(); ++a) {
            out << ',' << system.code(obj, a);
        }
        out << ',' << (target.mask[obj] ? 1 : 0) << '\n';
    }
}

} // namespace cnsp
