#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "toric_ic/document.hpp"
#include "toric_ic/fan.hpp"

namespace toric_ic {

/// Raw content of a fan file, before face closure.
///
///   rank = 2
///   cone "sigma" = [[1,0],[0,1]]
///   cone = [[-1,-1]]
struct FanDocument {
  std::size_t ambient_rank = 0;
  std::vector<std::vector<IntVector>> cones;
  std::vector<std::string> names;
};

/// Reads `rank` and `cone` statements. With `strict`, any other statement
/// is a ParseError.
FanDocument fan_document_from(const Document& doc, bool strict = true);

/// Parses, closes under faces and validates. Duplicate cones and
/// non-primitive generators are normalized and reported through `warnings`.
/// Throws ParseError or ValidationError (listing every violation).
Fan parse_fan(std::string_view text, std::vector<std::string>* warnings = nullptr);
Fan fan_from_document(const FanDocument& doc, std::vector<std::string>* warnings = nullptr);

/// Canonical document listing every cone with its id as label.
Document fan_to_document(const Fan& f);
std::string write_fan(const Fan& f);

/// Standard fans: affine:n, projective_space:n, p1xp1, hirzebruch:a,
/// weighted_p112, cone_over_square, a1_surface. Throws UnknownName.
Fan builtin_fan(std::string_view name);

/// The corpus used by the acceptance suite.
std::vector<std::string> corpus_fan_names();

/// "builtin:<name>" or a path to a fan file.
Fan load_fan(std::string_view spec, std::vector<std::string>* warnings = nullptr);

}  // namespace toric_ic
