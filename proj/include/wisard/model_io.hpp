#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "wisard/wisard.hpp"

namespace wisard {

inline constexpr int kModelFormatVersion = 1;

/// Versioned text model format. Every tuple and every RAM entry is written
/// explicitly in a fixed order, so equal models serialize to equal bytes.
void save_model(const WisardModel& model, std::ostream& out);
std::string save_model(const WisardModel& model);

/// Throws ModelFileError with kind Version, Truncated, Malformed or Invariant.
WisardModel load_model(std::istream& in);
WisardModel load_model_string(const std::string& text);

/// File variants write to a temporary sibling and rename on success.
void save_model_file(const WisardModel& model, const std::filesystem::path& path);
WisardModel load_model_file(const std::filesystem::path& path);

}  // namespace wisard
