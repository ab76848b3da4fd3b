#ifndef HSMOR_TYPES_HPP
#define HSMOR_TYPES_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsmor {

// Error raised for invalid configuration input (bad object sets, bad
// metric parameters, malformed config text). Maps to exit code 1 / the
// C API config status.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Error raised for conditions detected while running a valid configuration
// (I/O failures, non-finite outputs, unenclosed aura). Maps to exit code 2.
class RuntimeError : public std::runtime_error {
public:
    explicit RuntimeError(const std::string& msg) : std::runtime_error(msg) {}
};

using Vec = std::vector<double>;

struct NamedObject {
    std::string name;
    Vec coords;
};

// The full object set: fixed objects plus the movable drifter. The drifter
// is listed like any other object; scanners overwrite its coordinates.
struct ObjectConfig {
    std::vector<NamedObject> objects;
    std::string drifter_name = "Dr";

    std::size_t size() const { return objects.size(); }
    std::size_t dimension() const { return objects.empty() ? 0 : objects.front().coords.size(); }
    std::size_t drifter_index() const;

    // Throws ConfigError unless: all coordinate vectors share one dimension
    // P >= 1, names are unique, nonempty and free of signature-grammar
    // characters, and there are at least two fixed objects plus the drifter.
    void validate() const;
};

enum class MetricKind { ED, CB, XR };

enum class Conversion { Reciprocal };

struct MetricSpec {
    MetricKind kind = MetricKind::ED;
    double b = 1.50;           // XR decay base, must be > 1
    double cb_floor = 1e-9;    // per-monomer dissimilarity floor, must be > 0
    Conversion conversion = Conversion::Reciprocal;

    void validate() const;
};

enum class Semantics { Similarity, Dissimilarity };

// Symmetric square matrix indexed by object name. Construction computes each
// pair once, so symmetry is exact.
class SquareMatrix {
public:
    SquareMatrix() = default;
    SquareMatrix(std::vector<std::string> names, Semantics semantics);

    std::size_t size() const { return names_.size(); }
    Semantics semantics() const { return semantics_; }
    const std::vector<std::string>& names() const { return names_; }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        values_[i * n_ + j] = v;
        values_[j * n_ + i] = v;
    }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    // Submatrix over the given row/column indices, names carried along.
    SquareMatrix restricted(const std::vector<std::size_t>& idx) const;

private:
    std::vector<std::string> names_;
    std::vector<double> values_;
    std::size_t n_ = 0;
    Semantics semantics_ = Semantics::Similarity;
};

} // namespace hsmor

#endif
