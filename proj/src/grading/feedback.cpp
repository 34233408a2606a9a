#include "cooking_code/grading.hpp"

#include <fmt/format.h>

namespace cooking_code {

namespace {

// Positions are 1-based for learners.
std::string position(const Defect& d) { return std::to_string(d.index + 1); }

const Defect* first_defect(const GradeReport& report) {
    return report.defects.empty() ? nullptr : &report.defects.front();
}

std::string generic(Language es) {
    return es == Language::Spanish ? "Revisa el pedido y vuelve a intentarlo." : "Check the order and try again.";
}

}  // namespace

std::string feedback_text(const GradeReport& report, Language language) {
    const bool es = language == Language::Spanish;
    const Defect* d = first_defect(report);
    auto name = [&](Ingredient ingredient) { return std::string(display_name(ingredient, language)); };

    switch (report.category) {
        case FeedbackCategory::Correct:
            return es ? "¡Perfecto! Pedido completado." : "Perfect! Order complete.";

        case FeedbackCategory::MissingIngredient:
            if (!d || !d->expected) return generic(language);
            return es ? fmt::format("Casi... falta {} en la posición {}.", name(d->expected->ingredient), position(*d))
                      : fmt::format("Almost... {} is missing at position {}.", name(d->expected->ingredient),
                                    position(*d));

        case FeedbackCategory::ExtraIngredient:
            if (!d || !d->found) return generic(language);
            return es ? fmt::format("¡Casi! Sobra {} en la posición {}.", name(d->found->ingredient), position(*d))
                      : fmt::format("Almost! There is extra {} at position {}.", name(d->found->ingredient),
                                    position(*d));

        case FeedbackCategory::WrongPosition:
            if (!d || !d->expected) return generic(language);
            return es ? fmt::format("¡Casi! El ingrediente {} va en la posición {}.", name(d->expected->ingredient),
                                    position(*d))
                      : fmt::format("Almost! The {} goes in position {}.", name(d->expected->ingredient),
                                    position(*d));

        case FeedbackCategory::WrongCookState:
            if (d && d->found && d->found->cook == CookPhase::Burnt)
                return es ? "¡Uy! La carne se ha quemado. La próxima vez, sácala antes."
                          : "Oops! The meat got burnt. Take it off the grill sooner next time.";
            return es ? "La carne debe cocinarse antes de usarla." : "The meat must be cooked before using it.";

        case FeedbackCategory::WrongConditionalBranch:
            if (!report.flipped_condition) return generic(language);
            return es ? fmt::format("Revisa la condición: ¿hay {}? Mira el contador.", name(*report.flipped_condition))
                      : fmt::format("Check the condition: is there any {}? Look at the counter.",
                                    name(*report.flipped_condition));
    }
    return generic(language);
}

}  // namespace cooking_code
