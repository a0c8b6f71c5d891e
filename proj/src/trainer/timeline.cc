// Copyright 2026 The Burnscreen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trainer/timeline.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "common/io.h"
#include "common/status_macros.h"
#include "common/strings.h"
#include "common/text.h"
#include "fmt/format.h"

namespace burnscreen::trainer {

namespace {

constexpr double kPanelWidth = 300.0;
constexpr double kPanelHeight = 220.0;
constexpr double kMargin = 40.0;

struct Series {
  std::string name;
  std::string color;
  std::vector<double> values;
};

bool ParseDouble(const std::string& s, double& out) {
  try {
    size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (...) {
    return false;
  }
}

void AppendPanel(std::string& svg, double left, std::string_view label,
                 const std::vector<int>& steps, const std::vector<Series>& series,
                 double y_min, double y_max) {
  const double top = kMargin;
  const double x0 = left + kMargin;
  const double width = kPanelWidth - kMargin - 10.0;
  const double height = kPanelHeight - kMargin - 30.0;
  const double step_min = steps.empty() ? 0.0 : steps.front();
  const double step_max = steps.empty() ? 1.0 : steps.back();
  const double x_span = std::max(1.0, step_max - step_min);
  const double y_span = std::max(1e-9, y_max - y_min);
  auto x_of = [&](double step) { return x0 + (step - step_min) / x_span * width; };
  auto y_of = [&](double v) { return top + (y_max - v) / y_span * height; };

  fmt::format_to(std::back_inserter(svg),
                 "<g><rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" "
                 "height=\"{:.1f}\" fill=\"none\" stroke=\"#999\"/>\n",
                 x0, top, width, height);
  fmt::format_to(std::back_inserter(svg),
                 "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"13\" "
                 "text-anchor=\"middle\">{}</text>\n",
                 x0 + width / 2, top - 12, text::EscapeHtml(label));
  fmt::format_to(std::back_inserter(svg),
                 "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" "
                 "text-anchor=\"end\">{:.3f}</text>\n",
                 x0 - 4, top + 4, y_max);
  fmt::format_to(std::back_inserter(svg),
                 "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" "
                 "text-anchor=\"end\">{:.3f}</text>\n",
                 x0 - 4, top + height, y_min);
  fmt::format_to(std::back_inserter(svg),
                 "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\">{}</text>\n",
                 x0, top + height + 14, static_cast<int>(step_min));
  fmt::format_to(std::back_inserter(svg),
                 "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" "
                 "text-anchor=\"end\">{}</text>\n",
                 x0 + width, top + height + 14, static_cast<int>(step_max));
  fmt::format_to(std::back_inserter(svg),
                 "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" "
                 "text-anchor=\"middle\">step</text>\n",
                 x0 + width / 2, top + height + 14);
  double legend_y = top + height + 28;
  double legend_x = x0;
  for (const Series& s : series) {
    std::string points;
    for (size_t i = 0; i < steps.size(); ++i) {
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.1f},{:.1f}", x_of(steps[i]), y_of(s.values[i]));
    }
    fmt::format_to(std::back_inserter(svg),
                   "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" "
                   "points=\"{}\"/>\n",
                   s.color, points);
    fmt::format_to(std::back_inserter(svg),
                   "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" "
                   "fill=\"{}\">{}</text>\n",
                   legend_x, legend_y, s.color, s.name);
    legend_x += 90;
  }
  svg += "</g>\n";
}

}  // namespace

absl::Status MetricsTimeline::Validate() const {
  for (size_t i = 0; i < points.size(); ++i) {
    const TimelinePoint& p = points[i];
    if (i > 0 && p.step <= points[i - 1].step) {
      return absl::FailedPreconditionError(
          StrCat("timeline steps not increasing at point ", i));
    }
    for (double loss : {p.training_loss, p.eval_loss}) {
      if (!std::isfinite(loss) || loss < 0.0) {
        return absl::FailedPreconditionError(
            StrCat("invalid loss at step ", p.step));
      }
    }
    for (double rate : {p.eval_f1, p.eval_accuracy}) {
      if (!(rate >= 0.0 && rate <= 1.0)) {
        return absl::FailedPreconditionError(
            StrCat("metric outside [0, 1] at step ", p.step));
      }
    }
  }
  return absl::OkStatus();
}

std::string MetricsTimeline::ToTsv() const {
  std::string out = io::FormatTsvLine({"step", "epoch", "training_loss",
                                       "eval_loss", "eval_f1",
                                       "eval_accuracy"});
  for (const TimelinePoint& p : points) {
    out += io::FormatTsvLine(
        {StrCat(p.step), fmt::format("{:.17g}", p.epoch),
         fmt::format("{:.17g}", p.training_loss),
         fmt::format("{:.17g}", p.eval_loss), fmt::format("{:.17g}", p.eval_f1),
         fmt::format("{:.17g}", p.eval_accuracy)});
  }
  return out;
}

absl::StatusOr<MetricsTimeline> MetricsTimeline::FromTsv(
    std::string_view contents) {
  BURNSCREEN_ASSIGN_OR_RETURN(
      std::vector<io::TsvRow> rows,
      io::ParseTsv(contents,
                   {"step", "epoch", "training_loss", "eval_loss", "eval_f1",
                    "eval_accuracy"},
                   "timeline"));
  MetricsTimeline timeline;
  for (const io::TsvRow& row : rows) {
    TimelinePoint p;
    double step = 0;
    if (!ParseDouble(row.Get("step"), step) ||
        !ParseDouble(row.Get("epoch"), p.epoch) ||
        !ParseDouble(row.Get("training_loss"), p.training_loss) ||
        !ParseDouble(row.Get("eval_loss"), p.eval_loss) ||
        !ParseDouble(row.Get("eval_f1"), p.eval_f1) ||
        !ParseDouble(row.Get("eval_accuracy"), p.eval_accuracy)) {
      return absl::InvalidArgumentError(
          StrCat("timeline:", row.line_number, ": malformed number"));
    }
    p.step = static_cast<int>(step);
    timeline.points.push_back(p);
  }
  BURNSCREEN_RETURN_IF_ERROR(timeline.Validate());
  return timeline;
}

std::string MetricsTimeline::ToSvg(std::string_view title) const {
  std::vector<int> steps;
  Series training{"training loss", "#1f77b4", {}};
  Series eval_loss{"eval loss", "#ff7f0e", {}};
  Series f1{"eval F1", "#2ca02c", {}};
  Series accuracy{"eval accuracy", "#9467bd", {}};
  double loss_max = 0.0;
  for (const TimelinePoint& p : points) {
    steps.push_back(p.step);
    training.values.push_back(p.training_loss);
    eval_loss.values.push_back(p.eval_loss);
    f1.values.push_back(p.eval_f1);
    accuracy.values.push_back(p.eval_accuracy);
    loss_max = std::max({loss_max, p.training_loss, p.eval_loss});
  }
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" "
      "height=\"{:.0f}\" font-family=\"sans-serif\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"10\" y=\"18\" font-size=\"14\">{}</text>\n",
      3 * kPanelWidth, kPanelHeight + 20, text::EscapeHtml(title));
  AppendPanel(svg, 0, "loss", steps, {training, eval_loss}, 0.0,
              std::max(loss_max, 1e-3));
  AppendPanel(svg, kPanelWidth, "F1", steps, {f1}, 0.0, 1.0);
  AppendPanel(svg, 2 * kPanelWidth, "accuracy", steps, {accuracy}, 0.0, 1.0);
  svg += "</svg>\n";
  return svg;
}

}  // namespace burnscreen::trainer
