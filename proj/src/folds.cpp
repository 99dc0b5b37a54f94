#include "cxr/folds.hpp"

#include <algorithm>

#include "cxr/csv.hpp"
#include "cxr/error.hpp"
#include "cxr/random.hpp"

namespace cxr {
namespace {

struct Chunk {
  std::size_t begin;
  std::size_t size;
};

Chunk test_chunk(std::size_t n, int fold, int fold_count) {
  const auto folds = static_cast<std::size_t>(fold_count);
  const auto f = static_cast<std::size_t>(fold);
  const std::size_t base = n / folds;
  const std::size_t extra = n % folds;
  return {f * base + std::min(f, extra), base + (f < extra ? 1 : 0)};
}

// round(0.8 * pool) with halves rounding up, in integers.
std::size_t train_share(std::size_t pool) { return (8 * pool + 5) / 10; }

void check_fold_args(int fold, int fold_count) {
  if (fold_count < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 folds");
  if (fold < 0 || fold >= fold_count) {
    throw Error(ErrorCode::kInvalidArgument, "fold index out of range");
  }
}

}  // namespace

std::string_view role_name(Role role) {
  switch (role) {
    case Role::kTrain: return "train";
    case Role::kVal: return "val";
    case Role::kTest: return "test";
  }
  return "train";
}

FoldSizes fold_sizes(std::size_t class_size, int fold, int fold_count) {
  check_fold_args(fold, fold_count);
  if (class_size < static_cast<std::size_t>(fold_count)) {
    throw Error(ErrorCode::kClassTooSmall,
                "class of " + std::to_string(class_size) + " rows cannot fill " +
                    std::to_string(fold_count) + " folds");
  }
  FoldSizes s;
  s.test = test_chunk(class_size, fold, fold_count).size;
  const std::size_t pool = class_size - s.test;
  s.train = train_share(pool);
  s.val = pool - s.train;
  return s;
}

std::size_t augmented_train_size(std::size_t train, int copies_per_image) {
  if (copies_per_image < 0) {
    throw Error(ErrorCode::kInvalidArgument, "copies_per_image must be >= 0");
  }
  return train * (1 + static_cast<std::size_t>(copies_per_image));
}

Role FoldPlan::role_of(std::size_t row, int fold) const {
  check_fold_args(fold, fold_count);
  for (const auto& cf : folds[static_cast<std::size_t>(fold)]) {
    if (std::find(cf.test.begin(), cf.test.end(), row) != cf.test.end()) return Role::kTest;
    if (std::find(cf.val.begin(), cf.val.end(), row) != cf.val.end()) return Role::kVal;
    if (std::find(cf.train.begin(), cf.train.end(), row) != cf.train.end()) return Role::kTrain;
  }
  throw Error(ErrorCode::kInvalidArgument, "row " + std::to_string(row) + " not in plan");
}

FoldPlan make_folds(const Manifest& manifest, std::uint64_t seed, int fold_count) {
  check_fold_args(0, fold_count);
  FoldPlan plan;
  plan.fold_count = fold_count;
  plan.classes = manifest.classes;
  plan.folds.assign(static_cast<std::size_t>(fold_count),
                    std::vector<ClassFold>(manifest.classes.size()));

  for (std::size_t c = 0; c < manifest.classes.size(); ++c) {
    const auto& label = manifest.classes[c];
    auto rows = manifest.rows_of(label);
    const std::size_t n = rows.size();
    if (n < static_cast<std::size_t>(fold_count)) {
      throw Error(ErrorCode::kClassTooSmall,
                  "class '" + label + "' has " + std::to_string(n) + " rows, needs at least " +
                      std::to_string(fold_count));
    }
    KeyedRng rng(seed, label);
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(rows[i], rows[rng.below(i + 1)]);
    }

    for (int f = 0; f < fold_count; ++f) {
      const auto chunk = test_chunk(n, f, fold_count);
      auto& cf = plan.folds[static_cast<std::size_t>(f)][c];
      const auto first = rows.begin() + static_cast<std::ptrdiff_t>(chunk.begin);
      const auto last = first + static_cast<std::ptrdiff_t>(chunk.size);
      cf.test.assign(first, last);

      std::vector<std::size_t> pool(rows.begin(), first);
      pool.insert(pool.end(), last, rows.end());
      const std::size_t train = train_share(pool.size());
      cf.train.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(train));
      cf.val.assign(pool.begin() + static_cast<std::ptrdiff_t>(train), pool.end());
    }
  }
  return plan;
}

std::string format_fold_csv(const Manifest& manifest, const FoldPlan& plan, int fold) {
  check_fold_args(fold, plan.fold_count);
  std::vector<Role> roles(manifest.rows.size(), Role::kTrain);
  for (const auto& cf : plan.folds[static_cast<std::size_t>(fold)]) {
    for (auto r : cf.val) roles[r] = Role::kVal;
    for (auto r : cf.test) roles[r] = Role::kTest;
  }
  std::string out = "path,label,fold,role\n";
  for (std::size_t i = 0; i < manifest.rows.size(); ++i) {
    out += csv_line({manifest.rows[i].path, manifest.rows[i].label, std::to_string(fold),
                     std::string(role_name(roles[i]))});
  }
  return out;
}

}  // namespace cxr
