#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace siglink {

/// The 14 TimeML TLINK relation types.
enum class RelationType {
  BEFORE,
  AFTER,
  IBEFORE,
  IAFTER,
  INCLUDES,
  IS_INCLUDED,
  DURING,
  DURING_INV,
  BEGINS,
  BEGUN_BY,
  ENDS,
  ENDED_BY,
  SIMULTANEOUS,
  IDENTITY,
};

inline constexpr int kNumRelationTypes = 14;

/// Reduced label set after folding inverse relation pairs.
/// Declared in lexicographic name order; classifiers rely on that ordering.
enum class FoldedClass {
  BEFORE,
  BEGINS,
  ENDS,
  IBEFORE,
  INCLUDES,
  SIMULTANEOUS,
};

inline constexpr int kNumFoldedClasses = 6;

constexpr std::array<RelationType, kNumRelationTypes> all_relation_types() {
  return {RelationType::BEFORE,       RelationType::AFTER,
          RelationType::IBEFORE,      RelationType::IAFTER,
          RelationType::INCLUDES,     RelationType::IS_INCLUDED,
          RelationType::DURING,       RelationType::DURING_INV,
          RelationType::BEGINS,       RelationType::BEGUN_BY,
          RelationType::ENDS,         RelationType::ENDED_BY,
          RelationType::SIMULTANEOUS, RelationType::IDENTITY};
}

constexpr std::array<FoldedClass, kNumFoldedClasses> all_folded_classes() {
  return {FoldedClass::BEFORE,   FoldedClass::BEGINS,
          FoldedClass::ENDS,     FoldedClass::IBEFORE,
          FoldedClass::INCLUDES, FoldedClass::SIMULTANEOUS};
}

std::string_view to_string(RelationType r);
std::string_view to_string(FoldedClass c);

/// Parses one of the 14 uppercase TimeML relType strings.
std::optional<RelationType> parse_relation_type(std::string_view name);
std::optional<FoldedClass> parse_folded_class(std::string_view name);

/// Returns r' such that `a r b` holds iff `b r' a`.
RelationType invert(RelationType r);

struct Fold {
  FoldedClass label;
  bool swap_args;
};

/// Normalizes a relation to the reduced label set. When swap_args is true the
/// link's arguments must be exchanged to preserve the described ordering.
Fold fold(RelationType r);

}  // namespace siglink
