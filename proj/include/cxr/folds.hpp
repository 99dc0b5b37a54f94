#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cxr/manifest.hpp"

namespace cxr {

inline constexpr int kFoldCount = 5;

enum class Role { kTrain, kVal, kTest };

std::string_view role_name(Role role);

struct FoldSizes {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;

  friend bool operator==(const FoldSizes&, const FoldSizes&) = default;
};

/// Split arithmetic for one class of `class_size` rows in fold `fold`.
/// Test chunks are balanced (the first class_size % folds chunks carry one
/// extra row, so fold 0 holds class_size - floor(0.8 * class_size) for five
/// folds). The remaining pool splits into round(0.8 * pool) train rows,
/// half rounding up, and the rest validation.
FoldSizes fold_sizes(std::size_t class_size, int fold, int fold_count = kFoldCount);

/// Training rows once each is joined by `copies_per_image` rotated variants.
std::size_t augmented_train_size(std::size_t train, int copies_per_image);

struct ClassFold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

/// Stratified plan: folds[f][c] holds manifest row indices of class c.
struct FoldPlan {
  int fold_count = kFoldCount;
  std::vector<std::string> classes;
  std::vector<std::vector<ClassFold>> folds;

  Role role_of(std::size_t row, int fold) const;
};

/// Shuffles each class with a generator keyed by (seed, label) and cuts it
/// into contiguous test chunks. Throws kClassTooSmall for classes with fewer
/// rows than folds.
FoldPlan make_folds(const Manifest& manifest, std::uint64_t seed,
                    int fold_count = kFoldCount);

/// `path,label,fold,role` rows of one fold, in manifest order.
std::string format_fold_csv(const Manifest& manifest, const FoldPlan& plan, int fold);

}  // namespace cxr
