// Acceptance runner: one PASS/FAIL line per criterion. With a criterion name
// as the only argument, runs just that one.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cxr/batch.hpp"
#include "cxr/enhance.hpp"
#include "cxr/error.hpp"
#include "cxr/folds.hpp"
#include "cxr/metrics.hpp"
#include "cxr/report.hpp"
#include "cxr/synthetic.hpp"
#include "metrics_oracle.hpp"
#include "test_support.hpp"

using namespace cxr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

Outcome fold_table() {
  Outcome o;
  struct Row {
    const char* label;
    std::size_t n;
    int copies;
    std::size_t train, aug, val, test;
  };
  const Row rows[] = {{"covid", 3616, 1, 2314, 4628, 578, 724},
                      {"normal", 8851, 0, 5664, 5664, 1416, 1771},
                      {"pneumonia", 6012, 0, 3847, 3847, 962, 1203}};
  const double seconds = time_block([&] {
    Manifest m;
    for (const auto& r : rows) {
      m.classes.push_back(r.label);
      for (std::size_t i = 0; i < r.n; ++i) {
        m.rows.push_back({std::string(r.label) + "/" + std::to_string(i) + ".png", r.label});
      }
    }
    const auto plan = make_folds(m, 0);
    for (std::size_t c = 0; c < 3; ++c) {
      const auto& r = rows[c];
      const auto& cf = plan.folds[0][c];
      const auto s = fold_sizes(r.n, 0);
      const auto aug = augmented_train_size(cf.train.size(), r.copies);
      o.expect(s == FoldSizes{r.train, r.val, r.test} && cf.train.size() == r.train &&
                   cf.val.size() == r.val && cf.test.size() == r.test && aug == r.aug,
               std::string(r.label) + " got (" + std::to_string(cf.train.size()) + ", " +
                   std::to_string(aug) + ", " + std::to_string(cf.val.size()) + ", " +
                   std::to_string(cf.test.size()) + ")");
    }
  });
  o.expect(seconds < 1.0, "took " + fmt(seconds) + " s");
  return o;
}

Outcome bcet_example() {
  Outcome o;
  const auto k = bcet_fit({0.0, 200.0, 100.0, 15000.0}, {0.0, 255.0, 110.0});
  const double want[] = {0.0, 37.5, 92.5, 165.0, 255.0};
  const auto out = bcet_evaluate(testing::plane_of(5, 1, {0, 50, 100, 150, 200}), k);
  double mean = 0.0;
  for (int i = 0; i < 5; ++i) {
    o.expect(std::abs(out.data()[i] - want[i]) <= 1e-6,
             "value " + fmt(out.data()[i]) + " vs " + fmt(want[i]));
    mean += out.data()[i] / 5.0;
  }
  o.expect(std::abs(mean - 110.0) <= 1e-6, "mean " + fmt(mean));
  return o;
}

Outcome bcet_properties() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  const BcetTargets t{0.0, 255.0, 110.0};
  for (int trial = 0; trial < 100; ++trial) {
    const auto img = testing::random_varied_plane(rng, 32, 32);
    const auto st = image_stats(img);
    try {
      const auto k = bcet_fit(st, t);
      const auto out = bcet_evaluate(img, k);
      double mean = 0.0;
      for (double v : out.data()) mean += v;
      mean /= double(out.size());
      o.expect(std::abs(k(st.l) - t.L) <= 1e-6, "min target missed: " + fmt(k(st.l)));
      o.expect(std::abs(k(st.h) - t.H) <= 1e-6, "max target missed: " + fmt(k(st.h)));
      o.expect(std::abs(mean - t.E) <= 1e-6, "mean target missed: " + fmt(mean));
    } catch (const Error& e) {
      o.expect(false, std::string("fit failed: ") + e.what());
    }
  }
  return o;
}

Outcome clahe_oracle() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> dim(16, 96);
  for (int trial = 0; trial < 50; ++trial) {
    const auto img = testing::random_image(rng, dim(rng), dim(rng), 1);
    o.expect(clahe(img, {1, 1, 1e6}) == hist_equalize(img),
             "unclipped single tile differs from HE on trial " + std::to_string(trial));
    const auto near = clahe(img, {1, 1, 1e-12});
    int worst = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
      worst = std::max(worst, std::abs(int(near.data()[i]) - int(img.data()[i])));
    }
    o.expect(worst <= 1, "floor limit moved a level by " + std::to_string(worst));
  }
  return o;
}

Outcome involution_and_gamma() {
  Outcome o;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto img = testing::random_image(rng, 1 + trial % 37, 1 + trial % 23, trial % 2 ? 3 : 1);
    o.expect(complement(complement(img)) == img, "complement is not an involution");
  }
  std::vector<std::uint8_t> ramp(256);
  for (int k = 0; k < 256; ++k) ramp[k] = static_cast<std::uint8_t>(k);
  const auto levels = testing::plane_of(256, 1, ramp);
  o.expect(gamma_correct(levels, {0.0}) == levels, "a=0 is not the identity");
  for (double a : {0.0, 0.25, 0.5, 0.75, 0.99}) {
    const auto out = gamma_correct(levels, {a});
    o.expect(out.data()[0] == 0 && out.data()[255] == 255,
             "extremes not fixed at a=" + fmt(a));
    int drops = 0;
    double first_drop = -1.0;
    double prev = gamma_curve(0.0, a);
    for (int i = 1; i <= 10000; ++i) {
      const double x = 255.0 * i / 10000.0;
      const double g = gamma_curve(x, a);
      if (!(g > prev)) {
        if (drops++ == 0) first_drop = x;
      }
      prev = g;
    }
    o.expect(drops == 0, "g not strictly increasing at a=" + fmt(a) + ": " +
                             std::to_string(drops) + " of 10000 steps fail, first near x=" +
                             fmt(first_drop));
  }
  return o;
}

Outcome metric_identities() {
  Outcome o;
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [pred, truth] = testing::random_mask_pair(rng);
    const auto s = seg_overlap_scores(pred, truth);
    o.expect(std::abs(s.dice - 2.0 * s.iou / (1.0 + s.iou)) <= 1e-12,
             "dice " + fmt(s.dice) + " iou " + fmt(s.iou));
  }
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = classification_report(testing::random_confusion(rng));
    o.expect(std::abs(r.weighted.recall - r.overall_accuracy) <= 1e-12,
             "weighted recall " + fmt(r.weighted.recall) + " vs accuracy " +
                 fmt(r.overall_accuracy));
  }
  return o;
}

Outcome report_oracle() {
  Outcome o;
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cm = testing::random_confusion(rng);
    const double d = testing::report_distance(classification_report(cm), testing::oracle_report(cm));
    o.expect(d <= 1e-12, "max deviation " + fmt(d) + " on trial " + std::to_string(trial));
  }
  return o;
}

Outcome batch_determinism() {
  Outcome o;
  testing::TempDir dir("accept_det");
  const std::vector<std::string> classes{"covid", "normal", "pneumonia"};
  const std::uint64_t seed = 1234;
  // 17 + 17 + 16 = 50 images, regenerated per run from the same seed.
  auto dataset = [&](const std::string& tag) {
    auto m = write_synthetic_dataset(dir.path() / tag, classes, 17, 96, 80, 1, seed);
    m.rows.pop_back();
    return m;
  };
  for (auto t : {Technique::kHe, Technique::kClahe, Technique::kComplement, Technique::kGamma,
                 Technique::kBcet}) {
    const std::string id(technique_id(t));
    std::vector<std::vector<std::pair<std::string, std::vector<std::uint8_t>>>> trees;
    for (const auto& [run, threads] : std::vector<std::pair<std::string, int>>{
             {"a1", 1}, {"a8", 8}, {"b1", 1}, {"b8", 8}}) {
      const auto in = id + "_in_" + run;
      const auto m = dataset(in);
      RunConfig cfg;
      cfg.technique = t;
      cfg.seed = seed;
      cfg.resize = ResizeSpec{64, 64};
      cfg.threads = threads;
      cfg.input_root = dir.path() / in;
      cfg.output_dir = dir.path() / (id + "_out_" + run);
      const auto s = run_enhance_batch(m, cfg);
      o.expect(s.succeeded == 50, id + " run " + run + " succeeded on " +
                                      std::to_string(s.succeeded) + "/50");
      trees.push_back(testing::snapshot_tree(cfg.output_dir));
    }
    o.expect(trees[0].size() == 50, id + " wrote " + std::to_string(trees[0].size()) + " files");
    for (std::size_t i = 1; i < trees.size(); ++i) {
      o.expect(trees[i] == trees[0], id + " output tree differs between runs");
    }
  }
  return o;
}

Outcome scale_statement() {
  std::cout
      << "NOTE  not reproducible at desk scale: the CNN classification accuracies (e.g. 96.29%\n"
         "      for gamma + ChexNet), the U-Net segmentation scores (accuracy 98.63, IoU 94.3,\n"
         "      Dice 96.94), ROC curves and Score-CAM maps need GPU training on the full\n"
         "      radiograph corpus. The property and oracle checks above stand in for them;\n"
         "      the bench below times every technique on 100 synthetic 512x512 images.\n";
  Outcome o;
  std::vector<ImageBuffer> images;
  images.reserve(100);
  for (int i = 0; i < 100; ++i) images.push_back(synthetic_cxr(512, 512, 1, 99, std::to_string(i)));
  const std::vector<Technique> all(kAllTechniques.begin(), kAllTechniques.end());
  std::vector<BenchRow> rows;
  const double seconds = time_block([&] { rows = run_bench(images, all, {}, 1); });
  std::cout << format_timing_table(rows);
  std::cout << "      total " << fmt(seconds) << " s\n";
  o.expect(rows.size() == all.size(), "bench skipped techniques");
  for (const auto& r : rows) {
    o.expect(r.timing.seconds.size() == 100,
             std::string(technique_id(r.technique)) + " timed " +
                 std::to_string(r.timing.seconds.size()) + " images");
  }
  o.expect(seconds < 60.0, "bench took " + fmt(seconds) + " s");
  return o;
}

struct Criterion {
  const char* name;
  const char* summary;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const Criterion criteria[] = {
      {"fold_table", "fold arithmetic for class sizes 3616, 8851 and 6012", fold_table},
      {"bcet_example", "BCET worked example values and mean", bcet_example},
      {"bcet_properties", "BCET hits L, H and E on 100 random planes", bcet_properties},
      {"clahe_oracle", "single-tile CLAHE equals HE; floor limit within one level", clahe_oracle},
      {"involution_gamma", "complement involution; gamma fixed points, identity, monotonicity",
       involution_and_gamma},
      {"metric_identities", "Dice/IoU link and weighted recall equals accuracy",
       metric_identities},
      {"report_oracle", "classification report matches one-vs-rest brute force", report_oracle},
      {"batch_determinism", "enhance batch byte-identical across threads and runs",
       batch_determinism},
      {"desk_scale", "statement of scope plus 100-image 512x512 bench under 60 s",
       scale_statement},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && only != c.name) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS  " : "FAIL  ") << c.name << "  " << c.summary;
    if (!o.pass) std::cout << "  [" << o.detail << "]";
    std::cout << std::endl;
  }
  if (ran == 0) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  std::cout << (ran - failed) << "/" << ran << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
