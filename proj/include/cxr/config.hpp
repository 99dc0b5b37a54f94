#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cxr/enhance.hpp"
#include "cxr/preprocess.hpp"

namespace cxr {

/// Environment variable consulted for the default seed.
inline constexpr const char* kSeedEnvVar = "CXRPREP_SEED";

struct RunConfig {
  Technique technique = Technique::kOriginal;
  EnhanceParams params;
  std::optional<ResizeSpec> resize;  // unset keeps source dimensions
  AugmentSpec augment;
  std::vector<std::string> augment_classes;
  std::uint64_t seed = 0;
  std::filesystem::path input_root = ".";
  std::filesystem::path output_dir = "out";
  std::optional<std::filesystem::path> mask_root;
  int threads = 1;
};

/// Sets one `key = value` entry. Keys: technique, clahe.tiles_x,
/// clahe.tiles_y, clahe.clip_factor, gamma.a, bcet.L, bcet.H, bcet.E, resize
/// (WxH or none), augment.copies, augment.max_angle, augment.classes,
/// seed, input_root, output_dir, mask_root, threads.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);

/// Flat `key = value` text; `#` starts a comment. Entries override `base`.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig read_config(const std::filesystem::path& path, RunConfig base = {});

/// Every key with its current value, in the same syntax parse_config reads.
std::string format_config(const RunConfig& cfg);

/// Seed from kSeedEnvVar when set and numeric, otherwise `fallback`.
std::uint64_t default_seed(std::uint64_t fallback = 0);

}  // namespace cxr
