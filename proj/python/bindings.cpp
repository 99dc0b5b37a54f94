#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "cxr/enhance.hpp"
#include "cxr/error.hpp"
#include "cxr/folds.hpp"
#include "cxr/image_io.hpp"
#include "cxr/metrics.hpp"
#include "cxr/preprocess.hpp"

namespace py = pybind11;
using namespace cxr;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

ImageBuffer to_image(const U8Array& arr) {
  const auto info = arr.request();
  if (info.ndim != 2 && !(info.ndim == 3 && (info.shape[2] == 1 || info.shape[2] == 3))) {
    throw Error(ErrorCode::kInvalidArgument, "expected an (H, W) or (H, W, 3) uint8 array");
  }
  const int h = static_cast<int>(info.shape[0]);
  const int w = static_cast<int>(info.shape[1]);
  const int c = info.ndim == 3 ? static_cast<int>(info.shape[2]) : 1;
  const auto* p = static_cast<const std::uint8_t*>(info.ptr);
  return ImageBuffer(w, h, c, std::vector<std::uint8_t>(p, p + info.size));
}

U8Array to_array(const ImageBuffer& img) {
  std::vector<py::ssize_t> shape{img.height(), img.width()};
  if (img.channels() == 3) shape.push_back(3);
  U8Array out(shape);
  std::memcpy(out.mutable_data(), img.data().data(), img.size());
  return out;
}

py::array_t<double> to_array(const FloatImage& img) {
  std::vector<py::ssize_t> shape{img.height(), img.width()};
  if (img.channels() == 3) shape.push_back(3);
  py::array_t<double> out(shape);
  std::memcpy(out.mutable_data(), img.data().data(), img.size() * sizeof(double));
  return out;
}

BinaryMask to_mask(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& arr) {
  const auto info = arr.request();
  if (info.ndim != 2) throw Error(ErrorCode::kInvalidArgument, "mask must be (H, W)");
  const auto* p = static_cast<const std::uint8_t*>(info.ptr);
  return BinaryMask(static_cast<int>(info.shape[1]), static_cast<int>(info.shape[0]),
                    std::vector<std::uint8_t>(p, p + info.size));
}

py::dict metrics_dict(const ClassMetrics& m) {
  py::dict d;
  d["support"] = m.support;
  d["precision"] = m.precision;
  d["recall"] = m.recall;
  d["specificity"] = m.specificity;
  d["f1"] = m.f1;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chest radiograph preprocessing core";

  // Deliberately leaked so it outlives interpreter teardown.
  static PyObject* cxr_error = py::exception<Error>(m, "CxrError", PyExc_ValueError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(cxr_error)(e.what());
      instance.attr("code") = std::string(error_code_name(e.code()));
      PyErr_SetObject(cxr_error, instance.ptr());
    }
  });

  m.def("techniques", [] {
    std::vector<std::string> out;
    for (auto t : kAllTechniques) out.emplace_back(technique_id(t));
    return out;
  });

  m.def("read_image", [](const std::filesystem::path& p) { return to_array(read_image(p)); });
  m.def("write_image", [](const std::filesystem::path& p, const U8Array& img) {
    write_image(p, to_image(img));
  });

  m.def("histogram", [](const U8Array& plane) {
    const auto h = compute_histogram(to_image(plane));
    return std::vector<std::uint64_t>(h.counts.begin(), h.counts.end());
  });
  m.def("image_stats", [](const U8Array& plane) {
    const auto s = image_stats(to_image(plane));
    return py::dict(py::arg("l") = s.l, py::arg("h") = s.h, py::arg("e") = s.e,
                    py::arg("s") = s.s);
  });

  m.def("hist_equalize", [](const U8Array& plane) { return to_array(hist_equalize(to_image(plane))); });
  m.def(
      "clahe",
      [](const U8Array& img, int tiles_x, int tiles_y, double clip_factor) {
        return to_array(clahe(to_image(img), {tiles_x, tiles_y, clip_factor}));
      },
      py::arg("img"), py::arg("tiles_x") = 8, py::arg("tiles_y") = 8,
      py::arg("clip_factor") = 2.0);
  m.def("complement", [](const U8Array& img) { return to_array(complement(to_image(img))); });
  m.def("gamma_curve", &gamma_curve, py::arg("x"), py::arg("a"));
  m.def(
      "gamma_correct",
      [](const U8Array& plane, double a) { return to_array(gamma_correct(to_image(plane), {a})); },
      py::arg("plane"), py::arg("a") = 0.5);
  m.def(
      "bcet_fit",
      [](double l, double h, double e, double s, double L, double H, double E) {
        const auto k = bcet_fit({l, h, e, s}, {L, H, E});
        return py::make_tuple(k.a, k.b, k.c);
      },
      py::arg("l"), py::arg("h"), py::arg("e"), py::arg("s"), py::arg("L") = 0.0,
      py::arg("H") = 255.0, py::arg("E") = 110.0);
  m.def(
      "bcet",
      [](const U8Array& plane, double L, double H, double E) {
        return to_array(bcet(to_image(plane), {L, H, E}));
      },
      py::arg("plane"), py::arg("L") = 0.0, py::arg("H") = 255.0, py::arg("E") = 110.0);
  m.def(
      "enhance",
      [](const U8Array& img, const std::string& technique, int tiles_x, int tiles_y,
         double clip_factor, double a, double L, double H, double E) {
        EnhanceParams p;
        p.clahe = {tiles_x, tiles_y, clip_factor};
        p.gamma = {a};
        p.bcet = {L, H, E};
        return to_array(enhance(to_image(img), parse_technique(technique), p));
      },
      py::arg("img"), py::arg("technique"), py::arg("tiles_x") = 8, py::arg("tiles_y") = 8,
      py::arg("clip_factor") = 2.0, py::arg("a") = 0.5, py::arg("L") = 0.0,
      py::arg("H") = 255.0, py::arg("E") = 110.0);

  m.def("resize", [](const U8Array& img, int width, int height) {
    return to_array(resize_bilinear(to_image(img), {width, height}));
  });
  m.def("zscore", [](const U8Array& img) { return to_array(zscore_normalize(to_image(img))); });
  m.def("rotate", [](const U8Array& img, double degrees) {
    return to_array(rotate(to_image(img), degrees));
  });
  m.def(
      "augmentation_angles",
      [](const std::string& image_id, int copies, double max_abs_angle, std::uint64_t seed) {
        return augmentation_angles({copies, max_abs_angle, seed}, image_id);
      },
      py::arg("image_id"), py::arg("copies") = 1, py::arg("max_abs_angle") = 10.0,
      py::arg("seed") = 0);
  m.def("apply_mask", [](const U8Array& img, const U8Array& mask) {
    return to_array(apply_mask(to_image(img), to_mask(mask)));
  });

  m.def("seg_overlap_scores", [](const U8Array& pred, const U8Array& truth) {
    const auto s = seg_overlap_scores(to_mask(pred), to_mask(truth));
    return py::dict(py::arg("accuracy") = s.accuracy, py::arg("iou") = s.iou,
                    py::arg("dice") = s.dice);
  });
  m.def(
      "classification_report",
      [](const std::vector<std::vector<std::uint64_t>>& matrix,
         std::vector<std::string> classes) {
        if (classes.empty()) {
          for (std::size_t i = 0; i < matrix.size(); ++i) classes.push_back(std::to_string(i));
        }
        ConfusionMatrix cm(classes);
        if (matrix.size() != cm.k()) {
          throw Error(ErrorCode::kDimensionMismatch, "matrix rows do not match class count");
        }
        for (std::size_t t = 0; t < cm.k(); ++t) {
          if (matrix[t].size() != cm.k()) {
            throw Error(ErrorCode::kDimensionMismatch, "confusion matrix must be square");
          }
          for (std::size_t p = 0; p < cm.k(); ++p) cm.at(t, p) = matrix[t][p];
        }
        const auto r = classification_report(cm);
        py::dict per_class;
        for (const auto& c : r.per_class) per_class[py::str(c.label)] = metrics_dict(c);
        py::dict out;
        out["total"] = r.total;
        out["accuracy"] = r.overall_accuracy;
        out["per_class"] = per_class;
        out["weighted"] = metrics_dict(r.weighted);
        out["macro"] = metrics_dict(r.macro);
        return out;
      },
      py::arg("matrix"), py::arg("classes") = std::vector<std::string>{});
  m.def("fold_sizes", [](std::size_t class_size, int fold) {
    const auto s = fold_sizes(class_size, fold);
    return py::make_tuple(s.train, s.val, s.test);
  }, py::arg("class_size"), py::arg("fold") = 0);
}
