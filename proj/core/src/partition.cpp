#include "coklab/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace coklab {

Partition::Partition(std::vector<uint32_t> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] == 0) throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("partition parts must be nonincreasing");
    }
}

Partition Partition::parse(const std::string& s) {
    if (s.empty() || s == "[]") return Partition{};
    std::vector<uint32_t> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("bad partition string: " + s);
        parts.push_back(static_cast<uint32_t>(std::stoul(tok)));
    }
    return Partition(std::move(parts));
}

uint64_t Partition::size() const {
    return std::accumulate(parts_.begin(), parts_.end(), uint64_t{0});
}

Partition Partition::conjugate() const {
    if (parts_.empty()) return {};
    std::vector<uint32_t> conj(parts_[0]);
    for (uint32_t i = 1; i <= parts_[0]; ++i)
        conj[i - 1] = static_cast<uint32_t>(
            std::count_if(parts_.begin(), parts_.end(), [i](uint32_t p) { return p >= i; }));
    return Partition(std::move(conj));
}

uint32_t Partition::multiplicity(uint32_t i) const {
    return static_cast<uint32_t>(std::count(parts_.begin(), parts_.end(), i));
}

uint64_t Partition::weighted_sum() const {
    uint64_t n = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) n += i * uint64_t{parts_[i]};
    return n;
}

bool Partition::contains(const Partition& mu) const {
    if (mu.parts_.size() > parts_.size()) return false;
    for (std::size_t i = 0; i < mu.parts_.size(); ++i)
        if (mu.parts_[i] > parts_[i]) return false;
    return true;
}

bool Partition::interlaces_above(const Partition& mu) const {
    // la_1 >= mu_1 >= la_2 >= mu_2 >= ...
    std::size_t n = std::max(parts_.size(), mu.parts_.size() + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        if (part(i) < mu.part(i)) return false;
        if (mu.part(i) < part(i + 1)) return false;
    }
    return true;
}

std::string Partition::to_string() const {
    if (parts_.empty()) return "[]";
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts_[i]);
    }
    return out;
}

namespace {

void emit_partitions(uint32_t remaining, uint32_t max_part, uint32_t max_len,
                     std::vector<uint32_t>& stack, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(stack);
        return;
    }
    if (max_len == 0) return;
    // descending first part keeps each grade in descending-lex order
    for (uint32_t p = std::min(remaining, max_part); p >= 1; --p) {
        stack.push_back(p);
        emit_partitions(remaining - p, p, max_len - 1, stack, out);
        stack.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_bounded(uint32_t max_size, uint32_t max_part, uint32_t max_len) {
    std::vector<Partition> out;
    std::vector<uint32_t> stack;
    for (uint32_t n = 0; n <= max_size; ++n) emit_partitions(n, max_part, max_len, stack, out);
    return out;
}

std::vector<Partition> subdiagrams(const Partition& la) {
    std::vector<Partition> out;
    std::vector<uint32_t> stack;
    // DFS over rows, each row bounded by the row above and by la
    auto rec = [&](auto&& self, std::size_t row) -> void {
        out.emplace_back(stack);
        if (row >= la.length()) return;
        uint32_t hi = std::min(la.parts()[row], row == 0 ? la.parts()[0] : stack[row - 1]);
        for (uint32_t p = 1; p <= hi; ++p) {
            stack.push_back(p);
            self(self, row + 1);
            stack.pop_back();
        }
    };
    // rows must be weakly decreasing, so extend one row at a time
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.parts() > b.parts();
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace coklab
