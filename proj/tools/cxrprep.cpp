// cxrprep: batch driver for the chest radiograph preprocessing toolkit.
//
// Exit codes: 0 success, 1 error (one `error code=... message="..."` line on
// stderr), 2 usage error, 3 batch finished but some images failed.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cxr/batch.hpp"
#include "cxr/config.hpp"
#include "cxr/error.hpp"
#include "cxr/folds.hpp"
#include "cxr/image_io.hpp"
#include "cxr/manifest.hpp"
#include "cxr/report.hpp"
#include "cxr/synthetic.hpp"

namespace fs = std::filesystem;
using namespace cxr;

namespace {

constexpr int kExitError = 1;
constexpr int kExitPartial = 3;

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c == '\n' ? ' ' : c);
  }
  return out + "\"";
}

void print_error(std::string_view code, std::string_view message) {
  std::cerr << "error code=" << code << " message=" << quoted(message) << "\n";
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Globals {
  std::string root = ".";
  std::string config_file;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool print_config = false;

  fs::path under_root(const fs::path& p) const { return p.is_absolute() ? p : fs::path(root) / p; }

  RunConfig config() const {
    RunConfig cfg;
    cfg.seed = default_seed(0);
    cfg.augment.seed = cfg.seed;
    if (!config_file.empty()) cfg = read_config(under_root(config_file), cfg);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::kInvalidArgument, "--set expects key=value, got '" + kv + "'");
      }
      set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed) set_config_value(cfg, "seed", std::to_string(*seed));
    if (threads) set_config_value(cfg, "threads", std::to_string(*threads));
    return cfg;
  }

  // Directories in the config are taken relative to --root.
  RunConfig rooted(RunConfig cfg) const {
    cfg.input_root = under_root(cfg.input_root);
    cfg.output_dir = under_root(cfg.output_dir);
    if (cfg.mask_root) cfg.mask_root = under_root(*cfg.mask_root);
    return cfg;
  }
};

int finish_batch(const BatchSummary& summary) {
  std::cout << format_batch_summary(summary);
  return summary.failures.empty() ? 0 : kExitPartial;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chest radiograph preprocessing and enhancement toolkit"};
  app.require_subcommand(0, 1);
  app.fallthrough();  // global options may follow the subcommand
  Globals g;
  app.add_option("--root", g.root, "Base directory for every relative path")->capture_default_str();
  app.add_option("--config", g.config_file, "Flat key = value config file");
  app.add_option("--set", g.overrides, "Config override key=value (repeatable)");
  app.add_option("--seed", g.seed, std::string("Seed (default from ") + kSeedEnvVar + ", else 0)");
  app.add_option("--threads", g.threads, "Worker threads for batch commands")
      ->check(CLI::PositiveNumber);
  app.add_flag("--print-config", g.print_config, "Print the effective config and exit");

  std::string manifest_path;
  std::string classes_arg;
  std::string technique;
  std::string out_dir;
  std::string resize_arg;

  auto* enhance = app.add_subcommand("enhance", "Mask, resize and enhance every manifest image");
  enhance->add_option("-m,--manifest", manifest_path, "path,label CSV")->required();
  enhance->add_option("-t,--technique", technique,
                      "original, he, clahe, complement, gamma or bcet");
  enhance->add_option("-o,--out", out_dir, "Output directory");
  enhance->add_option("--resize", resize_arg, "WxH or none");
  std::string mask_root;
  enhance->add_option("--mask-root", mask_root, "Apply masks found at <dir>/<row path>");
  enhance->add_option("--classes", classes_arg, "Declared class list, comma separated");

  auto* split = app.add_subcommand("split", "Write stratified five-fold CSVs");
  split->add_option("-m,--manifest", manifest_path)->required();
  split->add_option("-o,--out", out_dir, "Directory for fold_<k>.csv")->required();
  split->add_option("--classes", classes_arg);
  int copies_for_table = 1;
  std::string augment_classes_arg;
  split->add_option("--augment-classes", augment_classes_arg,
                    "Classes whose training split is augmented (size table only)");
  split->add_option("--copies", copies_for_table, "Rotated copies per augmented image")
      ->check(CLI::NonNegativeNumber);

  auto* augment = app.add_subcommand("augment", "Copy originals and add rotated variants");
  augment->add_option("-m,--manifest", manifest_path)->required();
  augment->add_option("-o,--out", out_dir);
  augment->add_option("--classes", classes_arg);
  augment->add_option("--augment-classes", augment_classes_arg, "Classes to rotate");
  std::optional<int> copies;
  std::optional<double> max_angle;
  augment->add_option("--copies", copies)->check(CLI::NonNegativeNumber);
  augment->add_option("--max-angle", max_angle, "Largest |angle| in degrees")
      ->check(CLI::Range(0.0, 45.0));
  std::optional<int> train_fold;
  augment->add_option("--train-fold", train_fold,
                      "Only emit the training split of this fold (split seed = --seed)")
      ->check(CLI::Range(0, kFoldCount - 1));

  auto* mask = app.add_subcommand("mask", "Blank non-lung pixels, or score predicted masks");
  mask->add_option("-m,--manifest", manifest_path)->required();
  mask->add_option("--mask-root", mask_root, "Masks at <dir>/<row path>")->required();
  mask->add_option("-o,--out", out_dir);
  std::string truth_root;
  mask->add_option("--truth-root", truth_root,
                   "Score masks against references at <dir>/<row path> instead");
  mask->add_option("--classes", classes_arg);

  auto* hist = app.add_subcommand("hist", "Dump a 256-bin histogram CSV");
  std::string image_path;
  std::string hist_out;
  hist->add_option("image", image_path)->required();
  hist->add_option("-o,--out", hist_out, "CSV path (_r/_g/_b added for colour)")->required();

  auto* report = app.add_subcommand("report", "Classification report from predictions");
  std::string predictions;
  std::string text_out;
  std::string csv_out;
  std::string average = "weighted";
  report->add_option("predictions", predictions, "path,true_label,pred_label CSV")->required();
  report->add_option("--text", text_out, "Write the text report here");
  report->add_option("--csv", csv_out, "Write the CSV report here");
  report->add_option("--classes", classes_arg);
  report->add_option("--average", average, "weighted or macro")
      ->check(CLI::IsMember({"weighted", "macro"}));

  auto* bench = app.add_subcommand("bench", "Time every technique");
  bench->add_option("-m,--manifest", manifest_path, "Images to time");
  int synthetic = 0;
  std::string size_arg = "512x512";
  int repeats = 1;
  std::string techniques_arg;
  bench->add_option("--synthetic", synthetic, "Time N generated images instead")
      ->check(CLI::PositiveNumber);
  bench->add_option("--size", size_arg, "Synthetic image size WxH")->capture_default_str();
  bench->add_option("--repeats", repeats)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--techniques", techniques_arg, "Comma separated, default all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("usage", e.what());
    return 2;
  }

  try {
    RunConfig cfg = g.config();
    if (!technique.empty()) cfg.technique = parse_technique(technique);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (!resize_arg.empty()) set_config_value(cfg, "resize", resize_arg);
    if (!mask_root.empty()) cfg.mask_root = mask_root;
    if (!augment_classes_arg.empty()) cfg.augment_classes = split_commas(augment_classes_arg);
    if (copies) cfg.augment.copies_per_image = *copies;
    if (max_angle) cfg.augment.max_abs_angle = *max_angle;

    if (g.print_config) {
      std::cout << format_config(cfg);
      return 0;
    }
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 2;
    }

    const auto classes = split_commas(classes_arg);
    auto load_manifest = [&] { return read_manifest(g.under_root(manifest_path), classes); };
    const RunConfig run = g.rooted(cfg);

    if (*enhance) return finish_batch(run_enhance_batch(load_manifest(), run));

    if (*split) {
      const auto m = load_manifest();
      const auto plan = make_folds(m, run.seed);
      const fs::path dir = g.under_root(out_dir);
      for (int f = 0; f < kFoldCount; ++f) {
        const auto csv = format_fold_csv(m, plan, f);
        write_file(dir / ("fold_" + std::to_string(f) + ".csv"),
                   std::vector<std::uint8_t>(csv.begin(), csv.end()));
      }
      const auto augmented = split_commas(augment_classes_arg);
      std::printf("%-16s %8s %8s %8s %8s\n", "class", "train", "aug", "val", "test");
      for (std::size_t c = 0; c < plan.classes.size(); ++c) {
        const auto& cf = plan.folds[0][c];
        const bool aug = std::find(augmented.begin(), augmented.end(), plan.classes[c]) !=
                         augmented.end();
        std::printf("%-16s %8zu %8zu %8zu %8zu\n", plan.classes[c].c_str(), cf.train.size(),
                    augmented_train_size(cf.train.size(), aug ? copies_for_table : 0),
                    cf.val.size(), cf.test.size());
      }
      return 0;
    }

    if (*augment) {
      const auto m = load_manifest();
      std::optional<std::vector<std::size_t>> rows;
      if (train_fold) {
        const auto plan = make_folds(m, run.seed);
        rows.emplace();
        for (const auto& cf : plan.folds[static_cast<std::size_t>(*train_fold)]) {
          rows->insert(rows->end(), cf.train.begin(), cf.train.end());
        }
        std::sort(rows->begin(), rows->end());
      }
      const auto result = run_augment_batch(m, run, rows);
      const auto text = format_manifest(result.manifest);
      write_file(run.output_dir / "manifest.csv",
                 std::vector<std::uint8_t>(text.begin(), text.end()));
      std::cout << "manifest: " << (run.output_dir / "manifest.csv").string() << " ("
                << result.manifest.rows.size() << " rows)\n";
      return finish_batch(result.summary);
    }

    if (*mask) {
      const auto m = load_manifest();
      if (!truth_root.empty()) {
        const auto scores = score_masks(m, *run.mask_root, g.under_root(truth_root));
        std::printf("images %zu\naccuracy %.4f\niou %.4f\ndice %.4f\n", scores.per_image.size(),
                    scores.mean.accuracy, scores.mean.iou, scores.mean.dice);
        for (const auto& f : scores.failures) {
          std::cout << "failed " << f.path << " [" << f.code << "] " << f.message << "\n";
        }
        return scores.failures.empty() ? 0 : kExitPartial;
      }
      return finish_batch(run_mask_batch(m, run));
    }

    if (*hist) {
      for (const auto& p : dump_histogram(g.under_root(image_path), g.under_root(hist_out))) {
        std::cout << p.string() << "\n";
      }
      return 0;
    }

    if (*report) {
      const auto files = write_report(
          g.under_root(predictions), classes, text_out.empty() ? fs::path{} : g.under_root(text_out),
          csv_out.empty() ? fs::path{} : g.under_root(csv_out),
          average == "macro" ? Averaging::kMacro : Averaging::kWeighted);
      std::cout << files.text;
      return 0;
    }

    if (*bench) {
      std::vector<ImageBuffer> images;
      if (synthetic > 0) {
        RunConfig size_probe;
        set_config_value(size_probe, "resize", size_arg);
        for (int i = 0; i < synthetic; ++i) {
          images.push_back(synthetic_cxr(size_probe.resize->target_w, size_probe.resize->target_h,
                                         1, run.seed, std::to_string(i)));
        }
      } else if (!manifest_path.empty()) {
        for (const auto& row : load_manifest().rows) {
          images.push_back(read_image(run.input_root / row.path));
        }
      } else {
        throw Error(ErrorCode::kInvalidArgument, "bench needs --manifest or --synthetic");
      }
      std::vector<Technique> techniques;
      for (const auto& id : split_commas(techniques_arg)) techniques.push_back(parse_technique(id));
      if (techniques.empty()) techniques.assign(kAllTechniques.begin(), kAllTechniques.end());
      std::cout << format_timing_table(run_bench(images, techniques, run.params, repeats));
      return 0;
    }
  } catch (const Error& e) {
    print_error(error_code_name(e.code()), e.what());
    return kExitError;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kExitError;
  }
  return 0;
}
