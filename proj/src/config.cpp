#include "cxr/config.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

#include "cxr/error.hpp"
#include "cxr/image_io.hpp"

namespace cxr {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw Error(ErrorCode::kInvalidArgument,
              "config: invalid value '" + std::string(value) + "' for " + std::string(key));
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(key, value);
  return out;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "technique") {
    cfg.technique = parse_technique(value);
  } else if (key == "clahe.tiles_x") {
    cfg.params.clahe.tiles_x = parse_number<int>(key, value);
  } else if (key == "clahe.tiles_y") {
    cfg.params.clahe.tiles_y = parse_number<int>(key, value);
  } else if (key == "clahe.clip_factor") {
    cfg.params.clahe.clip_factor = parse_number<double>(key, value);
  } else if (key == "gamma.a") {
    cfg.params.gamma.a = parse_number<double>(key, value);
    if (!(cfg.params.gamma.a >= 0.0 && cfg.params.gamma.a < 1.0)) bad_value(key, value);
  } else if (key == "bcet.L") {
    cfg.params.bcet.L = parse_number<double>(key, value);
  } else if (key == "bcet.H") {
    cfg.params.bcet.H = parse_number<double>(key, value);
  } else if (key == "bcet.E") {
    cfg.params.bcet.E = parse_number<double>(key, value);
  } else if (key == "resize") {
    if (value == "none" || value.empty()) {
      cfg.resize.reset();
    } else {
      const auto x = value.find('x');
      if (x == std::string_view::npos) bad_value(key, value);
      ResizeSpec spec{parse_number<int>(key, value.substr(0, x)),
                      parse_number<int>(key, value.substr(x + 1))};
      if (spec.target_w < 1 || spec.target_h < 1) bad_value(key, value);
      cfg.resize = spec;
    }
  } else if (key == "augment.copies") {
    cfg.augment.copies_per_image = parse_number<int>(key, value);
    if (cfg.augment.copies_per_image < 0) bad_value(key, value);
  } else if (key == "augment.max_angle") {
    cfg.augment.max_abs_angle = parse_number<double>(key, value);
    if (!(cfg.augment.max_abs_angle > 0.0 && cfg.augment.max_abs_angle <= kMaxRotationDegrees)) {
      bad_value(key, value);
    }
  } else if (key == "augment.classes") {
    cfg.augment_classes = split_list(value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
    cfg.augment.seed = cfg.seed;
  } else if (key == "input_root") {
    cfg.input_root = std::string(value);
  } else if (key == "output_dir") {
    cfg.output_dir = std::string(value);
  } else if (key == "mask_root") {
    if (value.empty() || value == "none") {
      cfg.mask_root.reset();
    } else {
      cfg.mask_root = std::string(value);
    }
  } else if (key == "threads") {
    cfg.threads = parse_number<int>(key, value);
    if (cfg.threads < 1) bad_value(key, value);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "config: unknown key '" + std::string(key) + "'");
  }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "config line " + std::to_string(line_no) + ": expected key = value");
    }
    set_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

RunConfig read_config(const std::filesystem::path& path, RunConfig base) {
  const auto bytes = read_file(path);
  return parse_config(
      std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
      std::move(base));
}

std::string format_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "technique = " << technique_id(cfg.technique) << "\n"
     << "clahe.tiles_x = " << cfg.params.clahe.tiles_x << "\n"
     << "clahe.tiles_y = " << cfg.params.clahe.tiles_y << "\n"
     << "clahe.clip_factor = " << format_double(cfg.params.clahe.clip_factor) << "\n"
     << "gamma.a = " << format_double(cfg.params.gamma.a) << "\n"
     << "bcet.L = " << format_double(cfg.params.bcet.L) << "\n"
     << "bcet.H = " << format_double(cfg.params.bcet.H) << "\n"
     << "bcet.E = " << format_double(cfg.params.bcet.E) << "\n"
     << "resize = "
     << (cfg.resize ? std::to_string(cfg.resize->target_w) + "x" +
                          std::to_string(cfg.resize->target_h)
                    : std::string("none"))
     << "\n"
     << "augment.copies = " << cfg.augment.copies_per_image << "\n"
     << "augment.max_angle = " << format_double(cfg.augment.max_abs_angle) << "\n"
     << "augment.classes = " << join_list(cfg.augment_classes) << "\n"
     << "seed = " << cfg.seed << "\n"
     << "input_root = " << cfg.input_root.string() << "\n"
     << "output_dir = " << cfg.output_dir.string() << "\n"
     << "mask_root = " << (cfg.mask_root ? cfg.mask_root->string() : std::string("none"))
     << "\n"
     << "threads = " << cfg.threads << "\n";
  return os.str();
}

std::uint64_t default_seed(std::uint64_t fallback) {
  const char* env = std::getenv(kSeedEnvVar);
  if (env == nullptr || *env == '\0') return fallback;
  std::uint64_t value = 0;
  const std::string_view text(env);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return fallback;
  return value;
}

}  // namespace cxr
