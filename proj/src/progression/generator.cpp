#include "cooking_code/progression.hpp"

#include <algorithm>

namespace cooking_code {

namespace {

constexpr std::array<Ingredient, 4> kFillings = {Ingredient::Meat, Ingredient::Cheese, Ingredient::Lettuce,
                                                 Ingredient::Ketchup};
constexpr std::array<Ingredient, 3> kOptionalFillings = {Ingredient::Cheese, Ingredient::Lettuce,
                                                         Ingredient::Ketchup};
constexpr int kAttempts = 200;

// Remaining counts while drafting; the final satisfiability check is exact.
struct Budget {
    InventorySnapshot left;

    std::optional<Ingredient> pick(SplitMix64& rng, int need = 1) const {
        std::vector<Ingredient> options;
        for (Ingredient f : kFillings)
            if (left.count(f) >= need) options.push_back(f);
        if (options.empty()) return std::nullopt;
        return options[rng.below(options.size())];
    }
    void use(Ingredient ingredient, int n = 1) { left.set(ingredient, std::max(0, left.count(ingredient) - n)); }
};

// Scarcer optional fillings are preferred as conditions (weights 3:2:1), so
// over a day both the present and the absent branch come up.
Ingredient pick_condition(const InventorySnapshot& snapshot, SplitMix64& rng) {
    std::array<Ingredient, 3> ranked = kOptionalFillings;
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](Ingredient a, Ingredient b) { return snapshot.count(a) < snapshot.count(b); });
    const std::uint64_t r = rng.below(6);
    return ranked[r < 3 ? 0 : (r < 5 ? 1 : 2)];
}

Ingredient other_filling(Ingredient not_this, SplitMix64& rng) {
    std::vector<Ingredient> options;
    for (Ingredient f : kFillings)
        if (f != not_this) options.push_back(f);
    return options[rng.below(options.size())];
}

void insert_randomly(std::vector<Block>& blocks, Block block, SplitMix64& rng) {
    const auto at = static_cast<std::ptrdiff_t>(rng.below(blocks.size() + 1));
    blocks.insert(blocks.begin() + at, std::move(block));
}

If conditional(const InventorySnapshot& snapshot, SplitMix64& rng) {
    const Ingredient cond = pick_condition(snapshot, rng);
    If node{Condition{cond}, {Put{cond}}, {}};
    if (rng.chance(1, 3)) node.else_body.push_back(Put{other_filling(cond, rng)});
    return node;
}

std::vector<Block> draft_fillings(int level, const InventorySnapshot& snapshot, SplitMix64& rng) {
    Budget budget{snapshot};
    std::vector<Block> fillings;
    auto add_puts = [&](int n) {
        for (int i = 0; i < n; ++i) {
            auto f = budget.pick(rng);
            if (!f) return;
            budget.use(*f);
            fillings.push_back(Put{*f});
        }
    };

    if (level == 1) {
        add_puts(1 + static_cast<int>(rng.below(3)));
        return fillings;
    }
    if (level == 2) {
        add_puts(1 + static_cast<int>(rng.below(2)));
        const int ifs = rng.chance(1, 4) ? 2 : 1;
        for (int i = 0; i < ifs; ++i) insert_randomly(fillings, conditional(snapshot, rng), rng);
        return fillings;
    }

    const int count = 2 + static_cast<int>(rng.below(2));
    Repeat loop{count, {}};
    std::optional<Ingredient> body = rng.chance(1, 2) && budget.left.count(Ingredient::Meat) >= count
                                         ? std::optional(Ingredient::Meat)
                                         : budget.pick(rng, count);
    if (!body) return fillings;
    budget.use(*body, count);
    loop.body.push_back(Put{*body});
    if (rng.chance(1, 4)) {
        if (auto second = budget.pick(rng, count)) {
            budget.use(*second, count);
            loop.body.push_back(Put{*second});
        }
    }
    bool nested_if = false;
    if (rng.chance(1, 4)) {
        insert_randomly(loop.body, conditional(snapshot, rng), rng);
        nested_if = true;
    }
    add_puts(static_cast<int>(rng.below(2)));
    if (!nested_if && rng.chance(1, 2)) insert_randomly(fillings, conditional(snapshot, rng), rng);
    insert_randomly(fillings, std::move(loop), rng);
    return fillings;
}

bool repeats_well_formed(const std::vector<Block>& blocks, const InventorySnapshot& snapshot) {
    for (const Block& block : blocks) {
        if (const auto* node = std::get_if<Repeat>(&block.node)) {
            if (node->count < 2 || node->count > 3) return false;
            if (expand(node->body, snapshot).items.empty()) return false;
            if (!repeats_well_formed(node->body, snapshot)) return false;
        } else if (const auto* node = std::get_if<If>(&block.node)) {
            if (!repeats_well_formed(node->then_body, snapshot) || !repeats_well_formed(node->else_body, snapshot))
                return false;
        }
    }
    return true;
}

bool acceptable(const OrderAst& order, int level, const InventorySnapshot& snapshot) {
    const auto& blocks = order.blocks;
    if (blocks.size() < 3) return false;
    if (blocks.front() != Block(Put{Ingredient::BottomBread}) || blocks.back() != Block(Put{Ingredient::TopBread}))
        return false;
    const std::vector<Block> inner(blocks.begin() + 1, blocks.end() - 1);
    // Bread only at the ends.
    const ExpectedStack any = expand(inner, InventorySnapshot::uniform(1));
    const ExpectedStack none = expand(inner, InventorySnapshot{});
    for (const auto* stack : {&any, &none})
        for (const auto& item : stack->items)
            if (item.ingredient == Ingredient::BottomBread || item.ingredient == Ingredient::TopBread) return false;

    if (nesting_depth(blocks) > kMaxNesting) return false;
    const bool has_if = contains_if(blocks);
    const bool has_repeat = contains_repeat(blocks);
    if (level == 1 && (has_if || has_repeat)) return false;
    if (level == 2 && (!has_if || has_repeat)) return false;
    if (level == 3 && !has_repeat) return false;
    if (!repeats_well_formed(blocks, snapshot)) return false;

    const auto [shortest, longest] = expansion_length_range(blocks);
    if (shortest < kMinOrderLength || longest > kMaxOrderLength) return false;
    if (level == 1 && longest > 5) return false;
    return assemblable(order, snapshot);
}

OrderAst wrap(std::vector<Block> fillings) {
    OrderAst order;
    order.blocks.reserve(fillings.size() + 2);
    order.blocks.push_back(Put{Ingredient::BottomBread});
    for (Block& b : fillings) order.blocks.push_back(std::move(b));
    order.blocks.push_back(Put{Ingredient::TopBread});
    return order;
}

std::optional<OrderAst> fallback(int level, const InventorySnapshot& snapshot) {
    const int need = level == 3 ? 2 : 1;
    std::optional<Ingredient> filling;
    for (Ingredient f : kFillings)
        if (snapshot.count(f) >= need) {
            filling = f;
            break;
        }
    if (!filling) return std::nullopt;
    if (level == 1) return wrap({Put{*filling}});
    if (level == 2) {
        Ingredient cond = kOptionalFillings[0];
        for (Ingredient c : kOptionalFillings)
            if (c != *filling) {
                cond = c;
                break;
            }
        return wrap({If{Condition{cond}, {Put{cond}}, {}}, Put{*filling}});
    }
    return wrap({Repeat{2, {Put{*filling}}}});
}

}  // namespace

Difficulty::Difficulty(int level) : level_(level) {
    if (level < 1 || level > 3) throw std::invalid_argument("difficulty level must be 1, 2 or 3");
}

Difficulty scheduled_difficulty(int day_index) { return Difficulty(std::min(3, 1 + day_index / 2)); }

std::pair<int, int> expansion_length_range(const std::vector<Block>& blocks) {
    int lo = 0;
    int hi = 0;
    for (const Block& block : blocks) {
        if (std::holds_alternative<Put>(block.node)) {
            ++lo;
            ++hi;
        } else if (const auto* node = std::get_if<If>(&block.node)) {
            const auto [tlo, thi] = expansion_length_range(node->then_body);
            const auto [elo, ehi] = expansion_length_range(node->else_body);
            lo += std::min(tlo, elo);
            hi += std::max(thi, ehi);
        } else {
            const auto& loop = std::get<Repeat>(block.node);
            const auto [blo, bhi] = expansion_length_range(loop.body);
            lo += loop.count * blo;
            hi += loop.count * bhi;
        }
    }
    return {lo, hi};
}

bool assemblable(const OrderAst& order, const InventorySnapshot& snapshot) {
    std::array<int, kIngredientCount> need{};
    for (const auto& item : expand(order, snapshot).items) ++need[index_of(item.ingredient)];
    return std::all_of(kAllIngredients.begin(), kAllIngredients.end(),
                       [&](Ingredient i) { return need[index_of(i)] <= snapshot.count(i); });
}

Expected<OrderAst, GenerationError> generate_order(Difficulty difficulty, const InventorySnapshot& snapshot,
                                                    SplitMix64& rng) {
    if (!snapshot.has(Ingredient::BottomBread) || !snapshot.has(Ingredient::TopBread))
        return Unexpected{GenerationError::Unsatisfiable};
    const int level = difficulty.level();
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        OrderAst order = wrap(draft_fillings(level, snapshot, rng));
        if (acceptable(order, level, snapshot)) return order;
    }
    if (auto order = fallback(level, snapshot); order && acceptable(*order, level, snapshot)) return *order;
    return Unexpected{GenerationError::Unsatisfiable};
}

}  // namespace cooking_code
