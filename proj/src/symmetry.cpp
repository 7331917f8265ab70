#include "graphbell/symmetry.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <unordered_set>

namespace graphbell {

Assignment permute_assignment(const Permutation& perm, Assignment a) {
  Assignment out = 0;
  while (a) {
    auto i = static_cast<std::size_t>(std::countr_zero(a));
    out |= Assignment{1} << perm[i];
    a &= a - 1;
  }
  return out;
}

BigInt SymmetryContext::total() const {
  BigInt sum = 0;
  for (auto s : sizes) sum += s;
  return sum;
}

namespace {

// Byte-sliced permutation tables: image(a) = OR over bytes of table[byte][a >> 8 byte].
class FastPermutation {
 public:
  explicit FastPermutation(const Permutation& p) : bytes_((p.size() + 7) / 8) {
    tables_.resize(bytes_);
    for (std::size_t b = 0; b < bytes_; ++b)
      for (std::size_t v = 0; v < 256; ++v) {
        Assignment image = 0;
        for (std::size_t bit = 0; bit < 8; ++bit) {
          std::size_t i = b * 8 + bit;
          if ((v >> bit & 1U) && i < p.size()) image |= Assignment{1} << p[i];
        }
        tables_[b][v] = image;
      }
  }
  Assignment operator()(Assignment a) const {
    Assignment out = 0;
    for (std::size_t b = 0; b < bytes_; ++b) out |= tables_[b][(a >> (8 * b)) & 0xFFU];
    return out;
  }

 private:
  std::size_t bytes_;
  std::vector<std::array<Assignment, 256>> tables_;
};

// Visited set: a flat bitmap while it fits, a hash set beyond.
class VisitedSet {
 public:
  explicit VisitedSet(std::size_t settings) {
    if (settings <= 30) bitmap_.assign((std::size_t{1} << settings) / 64 + 1, 0);
  }
  // Returns true when newly inserted.
  bool insert(Assignment a) {
    if (!bitmap_.empty()) {
      auto& word = bitmap_[a >> 6];
      auto bit = std::uint64_t{1} << (a & 63U);
      if (word & bit) return false;
      word |= bit;
      return true;
    }
    return hashed_.insert(a).second;
  }
  bool contains(Assignment a) const {
    if (!bitmap_.empty()) return bitmap_[a >> 6] >> (a & 63U) & 1U;
    return hashed_.count(a) != 0;
  }
  // Orbits never span layers, so older layers can be dropped from the hash set.
  void forget_layer() {
    if (bitmap_.empty()) hashed_.clear();
  }

 private:
  std::vector<std::uint64_t> bitmap_;
  std::unordered_set<Assignment> hashed_;
};

}  // namespace

SymmetryContext enumerate_classes(std::size_t settings, const PermutationGroup& group, bool party_swap,
                                  const ClassOptions& options) {
  if (settings > 63) throw std::invalid_argument("at most 63 settings per party");
  if (group.degree() != settings) throw std::invalid_argument("group degree differs from the number of settings");
  SymmetryContext ctx;
  ctx.settings = settings;
  ctx.group = group;
  ctx.party_swap = party_swap;

  std::vector<FastPermutation> gens;
  for (const auto& g : group.generators()) gens.emplace_back(g);

  VisitedSet visited(settings);
  std::vector<Assignment> layer{0};
  visited.insert(0);
  ctx.reps.push_back(0);
  ctx.sizes.push_back(1);
  std::vector<Assignment> stack;
  for (std::size_t weight = 0; weight < settings; ++weight) {
    visited.forget_layer();
    std::vector<std::pair<Assignment, std::uint64_t>> next;
    for (Assignment rep : layer)
      for (std::size_t i = 0; i < settings; ++i) {
        Assignment start = rep | (Assignment{1} << i);
        if (start == rep || !visited.insert(start)) continue;
        Assignment minimum = start;
        std::uint64_t size = 0;
        stack.assign(1, start);
        while (!stack.empty()) {
          Assignment a = stack.back();
          stack.pop_back();
          ++size;
          minimum = std::min(minimum, a);
          for (const auto& g : gens) {
            Assignment b = g(a);
            if (visited.insert(b)) stack.push_back(b);
          }
        }
        next.emplace_back(minimum, size);
        if (ctx.reps.size() + next.size() > options.max_classes)
          throw ClassExplosion("more than " + std::to_string(options.max_classes) + " assignment classes");
      }
    std::sort(next.begin(), next.end());
    layer.clear();
    for (auto [rep, size] : next) {
      layer.push_back(rep);
      ctx.reps.push_back(rep);
      ctx.sizes.push_back(size);
    }
  }
  return ctx;
}

std::vector<std::vector<std::size_t>> coordinate_orbits(std::size_t settings, const PermutationGroup& group,
                                                        bool party_swap) {
  const std::size_t side = settings + 1;
  auto lift = [&](const Permutation& p) {
    Permutation out(side * side);
    for (std::size_t r = 0; r < side; ++r)
      for (std::size_t c = 0; c < side; ++c) {
        std::size_t r2 = r == 0 ? 0 : 1 + p[r - 1];
        std::size_t c2 = c == 0 ? 0 : 1 + p[c - 1];
        out[r * side + c] = r2 * side + c2;
      }
    return out;
  };
  std::vector<Permutation> gens;
  for (const auto& g : group.generators()) gens.push_back(lift(g));
  if (party_swap) {
    Permutation swap(side * side);
    for (std::size_t r = 0; r < side; ++r)
      for (std::size_t c = 0; c < side; ++c) swap[r * side + c] = c * side + r;
    gens.push_back(std::move(swap));
  }
  return orbit_partition(side * side, gens);
}

}  // namespace graphbell
