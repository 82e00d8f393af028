#include "cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "isrsgn/error.hpp"

namespace isrsgn::cli {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string fmt(double v, int precision = 1) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_step(double range, int target_ticks) {
  const double raw = range / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string render_snr_plot(const std::vector<ResultSeries>& series, const std::string& title) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.wavelength_nm.size(); ++i) {
      xmin = std::min(xmin, s.wavelength_nm[i]);
      xmax = std::max(xmax, s.wavelength_nm[i]);
      ymin = std::min(ymin, s.snr_nli_db[i]);
      ymax = std::max(ymax, s.snr_nli_db[i]);
    }
  }
  if (!std::isfinite(xmin)) throw InputError("plot: no data points");
  if (xmax == xmin) { xmin -= 1.0; xmax += 1.0; }
  const double ystep = nice_step(std::max(ymax - ymin, 0.5), 6);
  ymin = std::floor(ymin / ystep) * ystep;
  ymax = std::ceil(ymax / ystep) * ystep;
  if (ymax == ymin) ymax = ymin + ystep;
  const double xstep = nice_step(xmax - xmin, 8);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth, 0) + "\" height=\"" +
         fmt(kHeight, 0) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt(kWidth / 2, 0) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(title) + "</text>\n";

  for (double y = ymin; y <= ymax + 1e-9; y += ystep) {
    svg += "<line x1=\"" + fmt(kLeft) + "\" x2=\"" + fmt(kLeft + pw) + "\" y1=\"" + fmt(sy(y)) +
           "\" y2=\"" + fmt(sy(y)) + "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(sy(y) + 4) + "\" text-anchor=\"end\">" +
           fmt(y, ystep < 1.0 ? 1 : 0) + "</text>\n";
  }
  for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-9; x += xstep) {
    svg += "<line x1=\"" + fmt(sx(x)) + "\" x2=\"" + fmt(sx(x)) + "\" y1=\"" + fmt(kTop) +
           "\" y2=\"" + fmt(kTop + ph) + "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + fmt(sx(x)) + "\" y=\"" + fmt(kTop + ph + 18) + "\" text-anchor=\"middle\">" +
           fmt(x, 0) + "</text>\n";
  }
  svg += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) + "\" height=\"" +
         fmt(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 15) +
         "\" text-anchor=\"middle\">Wavelength [nm]</text>\n";
  svg += "<text transform=\"translate(18," + fmt(kTop + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">SNR_NLI [dB]</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    svg += "<g fill=\"" + std::string(color) + "\">\n";
    for (std::size_t i = 0; i < s.wavelength_nm.size(); ++i) {
      svg += "<circle cx=\"" + fmt(sx(s.wavelength_nm[i]), 2) + "\" cy=\"" +
             fmt(sy(s.snr_nli_db[i]), 2) + "\" r=\"1.6\"/>\n";
    }
    svg += "</g>\n";
    const double ly = kTop + 16 + 16 * static_cast<double>(k);
    svg += "<circle cx=\"" + fmt(kLeft + pw - 150) + "\" cy=\"" + fmt(ly - 4) + "\" r=\"4\" fill=\"" +
           color + "\"/>\n";
    svg += "<text x=\"" + fmt(kLeft + pw - 140) + "\" y=\"" + fmt(ly) + "\">" + escape(s.label) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace isrsgn::cli
