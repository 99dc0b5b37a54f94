#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cxr/config.hpp"
#include "cxr/folds.hpp"
#include "cxr/manifest.hpp"
#include "cxr/metrics.hpp"

namespace cxr {

struct ImageFailure {
  std::string path;
  std::string code;
  std::string message;
};

struct BatchSummary {
  std::size_t total = 0;
  std::size_t succeeded = 0;
  std::vector<ImageFailure> failures;  // in manifest order
  TimingStats timing;                  // enhancement step only
};

/// Calls fn(i) for i in [0, n) on `threads` workers. Work items are claimed
/// from a shared counter, so fn must not depend on call order.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// mask (optional) -> resize (optional) -> technique, as one pure function.
ImageBuffer preprocess_and_enhance(const ImageBuffer& img, const BinaryMask* mask,
                                   const RunConfig& cfg);

/// output_dir / label / file name of the row's path.
std::filesystem::path output_path_for(const ManifestRow& row, const RunConfig& cfg);

/// Enhances every manifest row into cfg.output_dir. Per-image failures are
/// collected and do not stop the batch.
BatchSummary run_enhance_batch(const Manifest& manifest, const RunConfig& cfg);

struct AugmentResult {
  Manifest manifest;  // paths relative to cfg.output_dir
  BatchSummary summary;
};

/// Copies originals into cfg.output_dir/<label>/ and adds rotated variants for
/// rows whose label is in cfg.augment_classes. With `train_rows` set, only
/// those manifest rows are emitted (e.g. one fold's training split).
AugmentResult run_augment_batch(const Manifest& manifest, const RunConfig& cfg,
                                const std::optional<std::vector<std::size_t>>& train_rows = {});

/// Zeroes non-lung pixels using masks found at mask_root/<row path>.
BatchSummary run_mask_batch(const Manifest& manifest, const RunConfig& cfg);

struct MaskScoreSummary {
  std::vector<SegScores> per_image;  // manifest order, failures excluded
  SegScores mean;
  std::vector<ImageFailure> failures;
};

MaskScoreSummary score_masks(const Manifest& manifest, const std::filesystem::path& pred_root,
                             const std::filesystem::path& truth_root);

struct BenchRow {
  Technique technique;
  TimingStats timing;
};

/// Times each technique `repeats` times over every image, single-threaded.
std::vector<BenchRow> run_bench(const std::vector<ImageBuffer>& images,
                                const std::vector<Technique>& techniques,
                                const EnhanceParams& params, int repeats);

}  // namespace cxr
