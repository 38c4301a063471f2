#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torlink/clasper.hpp"
#include "torlink/triple.hpp"

namespace torlink::cli {

// A rational homology sphere as the tool sees it: lambda_2, an optional
// lambda_3 tensor and optional named classes. Files are UTF-8 JSON:
//
//   {"name": "...",
//    "linking_matrix": [[...], ...]             -- or --
//    "group": [t_1, ..., t_r], "lambda2": [["a/b", ...], ...],
//    "lambda3": [{"triple": [i, j, k], "value": "a/b"}, ...],
//    "named_elements": {"x": [c_1, ..., c_r], ...}}
//
// Indices are 1-based. With linking_matrix, triples and element coordinates
// refer to the meridians of the surgery curves and are transported to the
// invariant-factor generators of H_1.
struct ManifoldModel {
  std::string name;
  LinkingForm form;
  std::optional<TripleForm> triple;
  std::map<std::string, GroupElement> named_elements;
  std::optional<IntegerMatrix> linking_matrix;
  // Images of the meridians in H_1 when linking_matrix is given.
  std::vector<GroupElement> meridian_images;

  // Compares the derived structures (name, lambda_2, lambda_3, elements).
  friend bool operator==(const ManifoldModel& a, const ManifoldModel& b) {
    return a.name == b.name && a.form == b.form && a.triple == b.triple && a.named_elements == b.named_elements;
  }
};

// Throws ParseError (malformed JSON, with line and column) or
// ValidationError (with the offending field).
ManifoldModel parse_model(std::string_view text);
ManifoldModel load_model(const std::string& path);

// Always writes the group + lambda2 form.
std::string serialize_model(const ManifoldModel& model);

ManifoldModel model_from_m0();

// Coordinates as written in the model file (meridians for linking_matrix
// models) to an element of H_1. Throws ValidationError on a length mismatch.
GroupElement element_from_coordinates(const ManifoldModel& model, const std::vector<Integer>& coords);

}  // namespace torlink::cli
