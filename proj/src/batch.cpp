#include "cxr/batch.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "cxr/error.hpp"
#include "cxr/image_io.hpp"

namespace cxr {
namespace {

ImageFailure failure_from(const std::string& path, const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return {path, std::string(error_code_name(err->code())), err->what()};
  }
  return {path, "internal", e.what()};
}

// One slot per manifest row; filled by workers, read back in row order.
struct RowOutcome {
  bool ok = false;
  bool skipped = false;
  double seconds = 0.0;
  std::optional<ImageFailure> failure;
};

BatchSummary collect(const Manifest& manifest, const std::vector<RowOutcome>& outcomes) {
  BatchSummary summary;
  std::vector<double> seconds;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (o.skipped) continue;
    ++summary.total;
    if (o.ok) {
      ++summary.succeeded;
      seconds.push_back(o.seconds);
    } else if (o.failure) {
      summary.failures.push_back(*o.failure);
    } else {
      summary.failures.push_back({manifest.rows[i].path, "internal", "no result"});
    }
  }
  summary.timing = summarize_timings(std::move(seconds));
  return summary;
}

// Later rows that would overwrite an earlier row's output are failed up front.
std::vector<std::optional<ImageFailure>> detect_collisions(
    const Manifest& manifest, const std::function<std::filesystem::path(std::size_t)>& out) {
  std::vector<std::optional<ImageFailure>> clashes(manifest.rows.size());
  std::map<std::filesystem::path, std::size_t> owner;
  for (std::size_t i = 0; i < manifest.rows.size(); ++i) {
    const auto [it, inserted] = owner.emplace(out(i), i);
    if (!inserted) {
      clashes[i] = ImageFailure{manifest.rows[i].path, "invalid_argument",
                                "output " + it->first.string() + " already written by " +
                                    manifest.rows[it->second].path};
    }
  }
  return clashes;
}

}  // namespace

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(std::min(workers, n));
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

ImageBuffer preprocess_and_enhance(const ImageBuffer& img, const BinaryMask* mask,
                                   const RunConfig& cfg) {
  ImageBuffer work = mask != nullptr ? apply_mask(img, *mask) : img;
  if (cfg.resize) work = resize_bilinear(work, *cfg.resize);
  return enhance(work, cfg.technique, cfg.params);
}

std::filesystem::path output_path_for(const ManifestRow& row, const RunConfig& cfg) {
  return cfg.output_dir / row.label / std::filesystem::path(row.path).filename();
}

BatchSummary run_enhance_batch(const Manifest& manifest, const RunConfig& cfg) {
  const auto clashes = detect_collisions(
      manifest, [&](std::size_t i) { return output_path_for(manifest.rows[i], cfg); });
  std::vector<RowOutcome> outcomes(manifest.rows.size());

  parallel_for(manifest.rows.size(), cfg.threads, [&](std::size_t i) {
    const auto& row = manifest.rows[i];
    auto& outcome = outcomes[i];
    if (clashes[i]) {
      outcome.failure = clashes[i];
      return;
    }
    try {
      const auto img = read_image(cfg.input_root / row.path);
      std::optional<BinaryMask> mask;
      if (cfg.mask_root) mask = BinaryMask::from_image(read_image(*cfg.mask_root / row.path));
      ImageBuffer work = mask ? apply_mask(img, *mask) : img;
      if (cfg.resize) work = resize_bilinear(work, *cfg.resize);
      auto timed = time_block([&] { return enhance(work, cfg.technique, cfg.params); });
      write_image(output_path_for(row, cfg), timed.value);
      outcome.seconds = timed.seconds;
      outcome.ok = true;
    } catch (const std::exception& e) {
      outcome.failure = failure_from(row.path, e);
    }
  });
  return collect(manifest, outcomes);
}

AugmentResult run_augment_batch(const Manifest& manifest, const RunConfig& cfg,
                                const std::optional<std::vector<std::size_t>>& train_rows) {
  std::vector<bool> include(manifest.rows.size(), !train_rows.has_value());
  if (train_rows) {
    for (auto r : *train_rows) {
      if (r >= include.size()) throw Error(ErrorCode::kInvalidArgument, "row out of range");
      include[r] = true;
    }
  }
  const auto flagged = [&](const std::string& label) {
    return std::find(cfg.augment_classes.begin(), cfg.augment_classes.end(), label) !=
           cfg.augment_classes.end();
  };
  const auto relative_out = [&](std::size_t i) {
    const auto& row = manifest.rows[i];
    return std::filesystem::path(row.label) / std::filesystem::path(row.path).filename();
  };
  const auto clashes = detect_collisions(manifest, relative_out);

  // Variant names are fixed before any work starts so the manifest does not
  // depend on scheduling.
  std::vector<std::vector<std::filesystem::path>> variants(manifest.rows.size());
  for (std::size_t i = 0; i < manifest.rows.size(); ++i) {
    if (!include[i] || !flagged(manifest.rows[i].label)) continue;
    const auto base = relative_out(i);
    for (int k = 0; k < cfg.augment.copies_per_image; ++k) {
      variants[i].push_back(base.parent_path() /
                            (base.stem().string() + "_rot" + std::to_string(k) +
                             base.extension().string()));
    }
  }

  std::vector<RowOutcome> outcomes(manifest.rows.size());
  parallel_for(manifest.rows.size(), cfg.threads, [&](std::size_t i) {
    auto& outcome = outcomes[i];
    if (!include[i]) {
      outcome.skipped = true;
      return;
    }
    const auto& row = manifest.rows[i];
    if (clashes[i]) {
      outcome.failure = clashes[i];
      return;
    }
    try {
      const auto source = cfg.input_root / row.path;
      const auto bytes = read_file(source);
      const auto img = decode_image(bytes);
      write_file(cfg.output_dir / relative_out(i), bytes);
      if (!variants[i].empty()) {
        auto timed = time_block([&] { return augment_rotations(img, cfg.augment, row.path); });
        for (std::size_t k = 0; k < variants[i].size(); ++k) {
          write_image(cfg.output_dir / variants[i][k], timed.value[k]);
        }
        outcome.seconds = timed.seconds;
      }
      outcome.ok = true;
    } catch (const std::exception& e) {
      outcome.failure = failure_from(row.path, e);
    }
  });

  AugmentResult result;
  result.manifest.classes = manifest.classes;
  for (std::size_t i = 0; i < manifest.rows.size(); ++i) {
    if (!outcomes[i].ok) continue;
    const auto& label = manifest.rows[i].label;
    result.manifest.rows.push_back({relative_out(i).generic_string(), label});
    for (const auto& v : variants[i]) result.manifest.rows.push_back({v.generic_string(), label});
  }
  result.summary = collect(manifest, outcomes);
  return result;
}

BatchSummary run_mask_batch(const Manifest& manifest, const RunConfig& cfg) {
  if (!cfg.mask_root) throw Error(ErrorCode::kInvalidArgument, "mask batch needs a mask root");
  const auto clashes = detect_collisions(
      manifest, [&](std::size_t i) { return output_path_for(manifest.rows[i], cfg); });
  std::vector<RowOutcome> outcomes(manifest.rows.size());
  parallel_for(manifest.rows.size(), cfg.threads, [&](std::size_t i) {
    const auto& row = manifest.rows[i];
    auto& outcome = outcomes[i];
    if (clashes[i]) {
      outcome.failure = clashes[i];
      return;
    }
    try {
      const auto img = read_image(cfg.input_root / row.path);
      const auto mask = BinaryMask::from_image(read_image(*cfg.mask_root / row.path));
      auto timed = time_block([&] { return apply_mask(img, mask); });
      write_image(output_path_for(row, cfg), timed.value);
      outcome.seconds = timed.seconds;
      outcome.ok = true;
    } catch (const std::exception& e) {
      outcome.failure = failure_from(row.path, e);
    }
  });
  return collect(manifest, outcomes);
}

MaskScoreSummary score_masks(const Manifest& manifest, const std::filesystem::path& pred_root,
                             const std::filesystem::path& truth_root) {
  MaskScoreSummary summary;
  for (const auto& row : manifest.rows) {
    try {
      const auto pred = BinaryMask::from_image(read_image(pred_root / row.path));
      const auto truth = BinaryMask::from_image(read_image(truth_root / row.path));
      summary.per_image.push_back(seg_overlap_scores(pred, truth));
    } catch (const std::exception& e) {
      summary.failures.push_back(failure_from(row.path, e));
    }
  }
  if (!summary.per_image.empty()) {
    const auto n = static_cast<double>(summary.per_image.size());
    for (const auto& s : summary.per_image) {
      summary.mean.accuracy += s.accuracy / n;
      summary.mean.iou += s.iou / n;
      summary.mean.dice += s.dice / n;
    }
  }
  return summary;
}

std::vector<BenchRow> run_bench(const std::vector<ImageBuffer>& images,
                                const std::vector<Technique>& techniques,
                                const EnhanceParams& params, int repeats) {
  if (repeats < 1) throw Error(ErrorCode::kInvalidArgument, "bench repeats must be >= 1");
  std::vector<BenchRow> rows;
  for (auto technique : techniques) {
    std::vector<double> seconds;
    seconds.reserve(images.size() * static_cast<std::size_t>(repeats));
    for (int r = 0; r < repeats; ++r) {
      for (const auto& img : images) {
        seconds.push_back(time_block([&] { return enhance(img, technique, params); }).seconds);
      }
    }
    rows.push_back({technique, summarize_timings(std::move(seconds))});
  }
  return rows;
}

}  // namespace cxr
