#include "cooking_code/order_lang.hpp"

#include <algorithm>

namespace cooking_code {

bool operator==(const If& a, const If& b) {
    return a.condition == b.condition && a.then_body == b.then_body && a.else_body == b.else_body;
}

bool operator==(const Repeat& a, const Repeat& b) { return a.count == b.count && a.body == b.body; }

namespace {

struct Keywords {
    std::string_view put, if_has, else_, repeat, times, end;
};

constexpr Keywords kSpanish{"PONER", "SI HAY", "SINO", "REPETIR", "VECES", "FIN"};
constexpr Keywords kEnglish{"PUT", "IF HAS", "ELSE", "REPEAT", "TIMES", "END"};

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void render_blocks(const std::vector<Block>& blocks, Language language, int depth, std::string& out) {
    const Keywords& kw = language == Language::Spanish ? kSpanish : kEnglish;
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    auto line = [&](std::string_view text) {
        if (!out.empty()) out += '\n';
        out += indent;
        out += text;
    };
    for (const Block& block : blocks) {
        std::visit(Overloaded{
                       [&](const Put& put) {
                           line(std::string(kw.put) + " " + std::string(token(put.ingredient, language)));
                       },
                       [&](const If& node) {
                           line(std::string(kw.if_has) + " " +
                                std::string(token(node.condition.has, language)));
                           render_blocks(node.then_body, language, depth + 1, out);
                           if (!node.else_body.empty()) {
                               line(kw.else_);
                               render_blocks(node.else_body, language, depth + 1, out);
                           }
                           line(kw.end);
                       },
                       [&](const Repeat& node) {
                           line(std::string(kw.repeat) + " " + std::to_string(node.count) + " " +
                                std::string(kw.times));
                           render_blocks(node.body, language, depth + 1, out);
                           line(kw.end);
                       },
                   },
                   block.node);
    }
}

// `next_if` numbers If nodes in pre-order; `flipped` selects one to invert.
void expand_into(const std::vector<Block>& blocks, const InventorySnapshot& snapshot,
                 std::optional<std::size_t> flipped, std::size_t& next_if,
                 std::vector<ExpectedItem>& out) {
    for (const Block& block : blocks) {
        std::visit(Overloaded{
                       [&](const Put& put) {
                           out.push_back({put.ingredient, put.ingredient == Ingredient::Meat});
                       },
                       [&](const If& node) {
                           const std::size_t id = next_if++;
                           bool taken = node.condition.holds(snapshot);
                           if (flipped && *flipped == id) taken = !taken;
                           // Both bodies are walked so If numbering is independent of the snapshot.
                           std::vector<ExpectedItem> then_items;
                           std::vector<ExpectedItem> else_items;
                           expand_into(node.then_body, snapshot, flipped, next_if, then_items);
                           expand_into(node.else_body, snapshot, flipped, next_if, else_items);
                           const auto& chosen = taken ? then_items : else_items;
                           out.insert(out.end(), chosen.begin(), chosen.end());
                       },
                       [&](const Repeat& node) {
                           std::vector<ExpectedItem> once;
                           expand_into(node.body, snapshot, flipped, next_if, once);
                           // Iterations share the same If nodes, so the body is expanded once.
                           for (int i = 0; i < node.count; ++i) out.insert(out.end(), once.begin(), once.end());
                       },
                   },
                   block.node);
    }
}

}  // namespace

std::string render(const OrderAst& ast, Language language) {
    std::string out;
    render_blocks(ast.blocks, language, 0, out);
    return out;
}

ExpectedStack expand(const std::vector<Block>& blocks, const InventorySnapshot& snapshot) {
    ExpectedStack stack;
    std::size_t next_if = 0;
    expand_into(blocks, snapshot, std::nullopt, next_if, stack.items);
    return stack;
}

ExpectedStack expand(const OrderAst& ast, const InventorySnapshot& snapshot) {
    return expand(ast.blocks, snapshot);
}

ExpectedStack expand_with_flip(const OrderAst& ast, const InventorySnapshot& snapshot,
                               std::size_t flipped_if) {
    ExpectedStack stack;
    std::size_t next_if = 0;
    expand_into(ast.blocks, snapshot, flipped_if, next_if, stack.items);
    return stack;
}

std::size_t count_if_blocks(const std::vector<Block>& blocks) {
    std::size_t n = 0;
    for (const Block& block : blocks) {
        if (const auto* node = std::get_if<If>(&block.node)) {
            n += 1 + count_if_blocks(node->then_body) + count_if_blocks(node->else_body);
        } else if (const auto* node = std::get_if<Repeat>(&block.node)) {
            n += count_if_blocks(node->body);
        }
    }
    return n;
}

bool contains_if(const std::vector<Block>& blocks) { return count_if_blocks(blocks) > 0; }

bool contains_repeat(const std::vector<Block>& blocks) {
    return std::any_of(blocks.begin(), blocks.end(), [](const Block& block) {
        if (std::holds_alternative<Repeat>(block.node)) return true;
        if (const auto* node = std::get_if<If>(&block.node))
            return contains_repeat(node->then_body) || contains_repeat(node->else_body);
        return false;
    });
}

int nesting_depth(const std::vector<Block>& blocks) {
    int depth = 0;
    for (const Block& block : blocks) {
        if (const auto* node = std::get_if<If>(&block.node)) {
            depth = std::max({depth, 1 + nesting_depth(node->then_body), 1 + nesting_depth(node->else_body)});
        } else if (const auto* node = std::get_if<Repeat>(&block.node)) {
            depth = std::max(depth, 1 + nesting_depth(node->body));
        }
    }
    return depth;
}

}  // namespace cooking_code
