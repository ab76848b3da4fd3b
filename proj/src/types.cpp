#include "types.hpp"

#include <set>

namespace hsmor {

namespace {

bool valid_name(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name) {
        // Characters reserved by the signature grammar.
        if (c == '(' || c == ')' || c == '-' || c == ' ') return false;
    }
    return true;
}

} // namespace

std::size_t ObjectConfig::drifter_index() const {
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i].name == drifter_name) return i;
    throw ConfigError("drifter '" + drifter_name + "' is not among the objects");
}

void ObjectConfig::validate() const {
    if (objects.size() < 3)
        throw ConfigError("need at least 2 fixed objects plus the drifter (got " +
                          std::to_string(objects.size()) + " objects)");
    const std::size_t dim = objects.front().coords.size();
    if (dim < 1) throw ConfigError("object '" + objects.front().name + "' has no coordinates");
    std::set<std::string> seen;
    for (const auto& obj : objects) {
        if (!valid_name(obj.name))
            throw ConfigError("invalid object name '" + obj.name +
                              "' (must be nonempty, without '(', ')', '-' or space)");
        if (!seen.insert(obj.name).second)
            throw ConfigError("duplicate object name '" + obj.name + "'");
        if (obj.coords.size() != dim)
            throw ConfigError("object '" + obj.name + "' has dimension " +
                              std::to_string(obj.coords.size()) + ", expected " +
                              std::to_string(dim));
    }
    drifter_index(); // throws if missing
}

void MetricSpec::validate() const {
    if (!(b > 1.0)) throw ConfigError("XR base b must be > 1");
    if (!(cb_floor > 0.0)) throw ConfigError("cb_floor must be > 0");
}

SquareMatrix::SquareMatrix(std::vector<std::string> names, Semantics semantics)
    : names_(std::move(names)),
      values_(names_.size() * names_.size(), 0.0),
      n_(names_.size()),
      semantics_(semantics) {
    for (std::size_t i = 0; i < n_; ++i)
        values_[i * n_ + i] = (semantics_ == Semantics::Similarity) ? 1.0 : 0.0;
}

SquareMatrix SquareMatrix::restricted(const std::vector<std::size_t>& idx) const {
    std::vector<std::string> sub_names;
    sub_names.reserve(idx.size());
    for (std::size_t i : idx) sub_names.push_back(names_[i]);
    SquareMatrix out(std::move(sub_names), semantics_);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            out.set(a, b, (*this)(idx[a], idx[b]));
    return out;
}

} // namespace hsmor
