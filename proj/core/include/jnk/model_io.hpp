#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jnk/model_spec.hpp"

namespace jnk {

//! Reads and validates a single model spec from a JSON file.
ModelSpec load_model_spec(const std::string& path);

//! Reads a grouped spec file (JSON array of specs) or a single spec.
std::vector<ModelSpec> load_model_specs(const std::string& path);

ModelSpec model_spec_from_json_text(const std::string& text);

//! Canonical JSON serialization; loading a canonical file and serializing it
//! again reproduces the bytes.
std::string serialize_model_spec(const ModelSpec& spec);

//! Reads a posterior draw matrix from CSV (header = parameter names).
PosteriorDrawMatrix load_posterior_csv(const std::string& path, std::size_t burn_in,
                                       std::size_t thin);

PosteriorDrawMatrix posterior_from_csv_text(const std::string& text, std::size_t burn_in,
                                            std::size_t thin);

//! Finds the unique element of names that is a colon-joined permutation of
//! the requested variables ("x:z" and "z:x" both match (x, z)).
std::string resolve_interaction_name(const std::vector<std::string>& names,
                                     const std::string& a, const std::string& b,
                                     const std::optional<std::string>& c = std::nullopt);

//! Derives the 2 (two-way) or 3 (three-way) focal-role views for the given
//! theta variables over the spec's parameter names.
std::vector<FocalView> derive_role_views(const std::vector<std::string>& spec_names,
                                         const std::string& theta_1, const std::string& theta_2,
                                         const std::optional<std::string>& theta_3 = std::nullopt);

}  // namespace jnk
