#include "coklab/grouptype.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace coklab {

namespace {
const Partition kEmpty{};

bool is_prime_u64(uint64_t p) {
    if (p < 2) return false;
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}
}  // namespace

GroupType GroupType::single(uint64_t p, Partition la) {
    GroupType g;
    g.set(p, std::move(la));
    return g;
}

GroupType GroupType::parse_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    if (!j.is_object()) throw std::invalid_argument("group type must be a JSON object");
    GroupType g;
    for (auto it = j.begin(); it != j.end(); ++it)
        g.set(std::stoull(it.key()), Partition::parse(it.value().get<std::string>()));
    return g;
}

void GroupType::set(uint64_t p, Partition la) {
    if (!is_prime_u64(p)) throw std::invalid_argument("group type key must be prime");
    if (la.empty())
        components_.erase(p);
    else
        components_[p] = std::move(la);
}

const Partition& GroupType::at(uint64_t p) const {
    auto it = components_.find(p);
    return it == components_.end() ? kEmpty : it->second;
}

Int GroupType::order() const {
    Int n = 1;
    for (const auto& [p, la] : components_)
        n *= boost::multiprecision::pow(Int(p), static_cast<unsigned>(la.size()));
    return n;
}

std::string GroupType::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [p, la] : components_) j[std::to_string(p)] = la.to_string();
    return j.dump();
}

}  // namespace coklab
