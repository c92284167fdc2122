#pragma once

#include <string>
#include <vector>

#include "peerbench/data_model.hpp"
#include "peerbench/judge_gateway.hpp"

namespace peerbench::points {

// Decomposes one review field into atomic points via the extraction
// templates. "N/A"-style placeholders yield an empty list, not an error.
std::vector<AtomicPoint> extract_points(const std::string& field_text, FieldKind kind,
                                        judge::Gateway& gateway);

// Binary semantic-overlap judgment; argument order is (AI point, human
// point) because the matching template is not guaranteed symmetric.
int match_points(const AtomicPoint& a, const AtomicPoint& h, judge::Gateway& gateway);

// Judges every |A| x |H_k| pair; judge errors are rethrown with the (i, j)
// coordinates prepended.
MatchMatrix build_match_matrix(const std::vector<AtomicPoint>& ai_points,
                               const std::vector<AtomicPoint>& human_points,
                               judge::Gateway& gateway);

// JSON persistence shape: [{"key_point": ..., "category": ...}, ...].
nlohmann::json points_to_json(const std::vector<AtomicPoint>& points);
std::vector<AtomicPoint> points_from_json(const nlohmann::json& arr, FieldKind kind);

}  // namespace peerbench::points
