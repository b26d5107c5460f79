#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

#include "valuegrad/errors.hpp"
#include "valuegrad/harness.hpp"
#include "valuegrad/solvers.hpp"

namespace valuegrad {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const char* color_of(const std::string& estimator) {
  if (estimator == "primal") return "#000000";
  if (estimator == "AnG") return "#e69f00";
  if (estimator == "AuG") return "#009e73";
  if (estimator == "IG") return "#d55e00";
  if (estimator == "DG") return "#0072b2";
  return "#7f7f7f";
}

int estimator_rank(const std::string& estimator) {
  static const char* order[] = {"primal", "AnG", "AuG", "IG", "DG"};
  for (int i = 0; i < 5; ++i) {
    if (estimator == order[i]) return i;
  }
  return 5;
}

bool inertial_solver(const std::string& solver) {
  return solver == to_string(Method::HeavyBall) || solver == to_string(Method::iPiasco) ||
         solver == to_string(Method::FISTA);
}

struct Series {
  std::string solver;
  std::string estimator;
  std::vector<std::pair<int, double>> points;  // (iteration, log10 error)
};

std::string render_cell(const std::string& problem, int P, std::vector<Series> series) {
  std::sort(series.begin(), series.end(), [](const Series& a, const Series& b) {
    const bool ia = inertial_solver(a.solver);
    const bool ib = inertial_solver(b.solver);
    return std::make_tuple(ia, estimator_rank(a.estimator), a.solver, a.estimator) <
           std::make_tuple(ib, estimator_rank(b.estimator), b.solver, b.estimator);
  });

  int max_iter = 1;
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [k, v] : s.points) {
      max_iter = std::max(max_iter, k);
      if (first) {
        lo = hi = v;
        first = false;
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  lo = std::floor(lo);
  hi = std::ceil(hi);
  if (hi <= lo) hi = lo + 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto sx = [&](double k) { return kLeft + pw * k / max_iter; };
  const auto sy = [&](double v) { return kTop + ph * (hi - v) / (hi - lo); };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(kWidth) + "\" height=\"" +
       fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fmt(kWidth) + "\" height=\"" + fmt(kHeight) + "\" fill=\"#ffffff\"/>\n";
  s += "<text x=\"" + fmt(kLeft) + "\" y=\"24.00\" font-family=\"sans-serif\" font-size=\"14\">" + problem +
       ", P = " + std::to_string(P) + "</text>\n";
  s += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) +
       "\" fill=\"none\" stroke=\"#000000\"/>\n";

  const int ystep = std::max(1, static_cast<int>(std::ceil((hi - lo) / 8.0)));
  for (int t = static_cast<int>(lo); t <= static_cast<int>(hi); t += ystep) {
    const double y = sy(t);
    s += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft + pw) + "\" y2=\"" + fmt(y) +
         "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(y + 4) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">1e" + std::to_string(t) + "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const int k = static_cast<int>(std::lround(static_cast<double>(max_iter) * i / 5));
    s += "<text x=\"" + fmt(sx(k)) + "\" y=\"" + fmt(kTop + ph + 16) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" + std::to_string(k) + "</text>\n";
  }
  s += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 10) +
       "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">iteration</text>\n";

  for (const auto& ser : series) {
    s += "<polyline fill=\"none\" stroke=\"" + std::string(color_of(ser.estimator)) + "\" stroke-width=\"1.5\"";
    if (inertial_solver(ser.solver)) s += " stroke-dasharray=\"6,3\"";
    s += " points=\"";
    for (size_t i = 0; i < ser.points.size(); ++i) {
      if (i) s += ' ';
      s += fmt(sx(ser.points[i].first)) + "," + fmt(sy(ser.points[i].second));
    }
    s += "\"/>\n";
  }

  double ly = kTop + 8;
  const double lx = kLeft + pw + 14;
  for (const auto& ser : series) {
    s += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(lx + 24) + "\" y2=\"" + fmt(ly) +
         "\" stroke=\"" + color_of(ser.estimator) + "\" stroke-width=\"1.5\"";
    if (inertial_solver(ser.solver)) s += " stroke-dasharray=\"6,3\"";
    s += "/>\n";
    s += "<text x=\"" + fmt(lx + 30) + "\" y=\"" + fmt(ly + 4) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
         ser.estimator + " (" + ser.solver + ")</text>\n";
    ly += 18;
  }
  s += "</svg>\n";
  return s;
}

}  // namespace

std::map<std::string, std::string> render_plots(const std::vector<ErrorRecord>& records) {
  std::map<std::pair<std::string, int>, std::map<std::pair<std::string, std::string>, Series>> cells;
  std::vector<ErrorRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end(), record_less);
  for (const auto& r : sorted) {
    auto& ser = cells[{r.problem, r.P}][{r.solver, r.estimator}];
    ser.solver = r.solver;
    ser.estimator = r.estimator;
    ser.points.emplace_back(r.iteration, std::log10(std::max(r.error, kPlotFloor)));
  }
  std::map<std::string, std::string> out;
  for (const auto& [key, by_series] : cells) {
    std::vector<Series> series;
    for (const auto& [k, ser] : by_series) {
      if (!ser.points.empty()) series.push_back(ser);
    }
    if (series.empty()) continue;
    out[key.first + "_P" + std::to_string(key.second) + ".svg"] = render_cell(key.first, key.second, series);
  }
  return out;
}

std::vector<std::filesystem::path> emit_plots(const std::vector<ErrorRecord>& records,
                                              const std::filesystem::path& dir) {
  if (records.empty()) throw InvalidInput("emit_plots: no records");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("emit_plots: cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& [name, svg] : render_plots(records)) {
    const auto path = dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("emit_plots: cannot open " + path.string() + " for writing");
    f.write(svg.data(), static_cast<std::streamsize>(svg.size()));
    if (!f) throw Error("emit_plots: write failed for " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace valuegrad
