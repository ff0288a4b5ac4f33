// Copyright 2026 The GANQ Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GANQ_SVG_PLOT_HPP_
#define GANQ_SVG_PLOT_HPP_

#include <string>
#include <vector>

namespace ganq {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  // Optional band drawn behind the line; empty or same length as x.
  std::vector<double> lower;
  std::vector<double> upper;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "episode";
  std::string y_label = "reward";
  int width = 720;
  int height = 420;
};

// A self-contained SVG document with axes, ticks, one polyline per series
// and a legend. Non-finite points are skipped.
std::string line_plot_svg(const std::vector<PlotSeries>& series, const PlotOptions& options);

}  // namespace ganq

#endif  // GANQ_SVG_PLOT_HPP_
