#include "siglink/relations.hpp"

namespace siglink {

std::string_view to_string(RelationType r) {
  switch (r) {
    case RelationType::BEFORE: return "BEFORE";
    case RelationType::AFTER: return "AFTER";
    case RelationType::IBEFORE: return "IBEFORE";
    case RelationType::IAFTER: return "IAFTER";
    case RelationType::INCLUDES: return "INCLUDES";
    case RelationType::IS_INCLUDED: return "IS_INCLUDED";
    case RelationType::DURING: return "DURING";
    case RelationType::DURING_INV: return "DURING_INV";
    case RelationType::BEGINS: return "BEGINS";
    case RelationType::BEGUN_BY: return "BEGUN_BY";
    case RelationType::ENDS: return "ENDS";
    case RelationType::ENDED_BY: return "ENDED_BY";
    case RelationType::SIMULTANEOUS: return "SIMULTANEOUS";
    case RelationType::IDENTITY: return "IDENTITY";
  }
  return "";
}

std::string_view to_string(FoldedClass c) {
  switch (c) {
    case FoldedClass::BEFORE: return "BEFORE";
    case FoldedClass::BEGINS: return "BEGINS";
    case FoldedClass::ENDS: return "ENDS";
    case FoldedClass::IBEFORE: return "IBEFORE";
    case FoldedClass::INCLUDES: return "INCLUDES";
    case FoldedClass::SIMULTANEOUS: return "SIMULTANEOUS";
  }
  return "";
}

std::optional<RelationType> parse_relation_type(std::string_view name) {
  for (RelationType r : all_relation_types()) {
    if (name == to_string(r)) return r;
  }
  return std::nullopt;
}

std::optional<FoldedClass> parse_folded_class(std::string_view name) {
  for (FoldedClass c : all_folded_classes()) {
    if (name == to_string(c)) return c;
  }
  return std::nullopt;
}

RelationType invert(RelationType r) {
  switch (r) {
    case RelationType::BEFORE: return RelationType::AFTER;
    case RelationType::AFTER: return RelationType::BEFORE;
    case RelationType::IBEFORE: return RelationType::IAFTER;
    case RelationType::IAFTER: return RelationType::IBEFORE;
    case RelationType::INCLUDES: return RelationType::IS_INCLUDED;
    case RelationType::IS_INCLUDED: return RelationType::INCLUDES;
    case RelationType::DURING: return RelationType::DURING_INV;
    case RelationType::DURING_INV: return RelationType::DURING;
    case RelationType::BEGINS: return RelationType::BEGUN_BY;
    case RelationType::BEGUN_BY: return RelationType::BEGINS;
    case RelationType::ENDS: return RelationType::ENDED_BY;
    case RelationType::ENDED_BY: return RelationType::ENDS;
    case RelationType::SIMULTANEOUS: return RelationType::SIMULTANEOUS;
    case RelationType::IDENTITY: return RelationType::IDENTITY;
  }
  return r;
}

Fold fold(RelationType r) {
  switch (r) {
    case RelationType::BEFORE: return {FoldedClass::BEFORE, false};
    case RelationType::AFTER: return {FoldedClass::BEFORE, true};
    case RelationType::IBEFORE: return {FoldedClass::IBEFORE, false};
    case RelationType::IAFTER: return {FoldedClass::IBEFORE, true};
    case RelationType::INCLUDES: return {FoldedClass::INCLUDES, false};
    case RelationType::IS_INCLUDED: return {FoldedClass::INCLUDES, true};
    case RelationType::DURING: return {FoldedClass::SIMULTANEOUS, false};
    case RelationType::DURING_INV: return {FoldedClass::SIMULTANEOUS, true};
    case RelationType::BEGINS: return {FoldedClass::BEGINS, false};
    case RelationType::BEGUN_BY: return {FoldedClass::BEGINS, true};
    case RelationType::ENDS: return {FoldedClass::ENDS, false};
    case RelationType::ENDED_BY: return {FoldedClass::ENDS, true};
    case RelationType::SIMULTANEOUS: return {FoldedClass::SIMULTANEOUS, false};
    case RelationType::IDENTITY: return {FoldedClass::SIMULTANEOUS, false};
  }
  return {FoldedClass::SIMULTANEOUS, false};
}

}  // namespace siglink
