#include "rbql/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rbql {
namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 836.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 468.0;

struct AgentStyle {
    AgentKind agent;
    const char* line_color;
    const char* band_color;
};

constexpr AgentStyle kStyles[] = {
    {AgentKind::Q, "#c0392b", "#f2b8b5"},
    {AgentKind::Rbql, "#0f766e", "#b7e4c7"},
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string label_num(double v) {
    char buf[32];
    if (v == std::floor(v) && std::abs(v) < 1e9) {
        std::snprintf(buf, sizeof(buf), "%.0f", v);
    } else {
        std::snprintf(buf, sizeof(buf), "%.2f", v);
    }
    return buf;
}

/// Largest of 1/2/5 * 10^k not above `raw`.
double nice_step(double raw) {
    if (raw <= 0) return 1.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (const double m : {5.0, 2.0, 1.0}) {
        if (mag * m <= raw) return mag * m;
    }
    return mag;
}

} // namespace

std::string render_plot_svg(const std::vector<SummaryRow>& summary, int size) {
    std::vector<const SummaryRow*> rows;
    for (const SummaryRow& r : summary) {
        if (r.size == size) rows.push_back(&r);
    }
    if (rows.empty()) {
        throw std::invalid_argument("render_plot: no summary rows for size " +
                                    std::to_string(size));
    }

    const int reference = 2 * size - 2;
    int max_episode = 0;
    double max_value = static_cast<double>(reference);
    for (const SummaryRow* r : rows) {
        max_episode = std::max(max_episode, r->episode);
        max_value = std::max({max_value, static_cast<double>(r->trimmed_max), r->mean});
    }
    const double x_span = max_episode > 0 ? max_episode : 1;
    const double y_top = max_value * 1.05;

    const auto x_of = [&](double episode) {
        return kLeft + (kRight - kLeft) * (episode / x_span);
    };
    const auto y_of = [&](double value) {
        return kBottom - (kBottom - kTop) * (value / y_top);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"18\" font-family=\"sans-serif\" " +
           "font-size=\"14\" text-anchor=\"middle\">" + std::to_string(size) + "x" +
           std::to_string(size) + " maze, steps per episode</text>\n";

    // Bands first so lines stay visible on top.
    for (const AgentStyle& style : kStyles) {
        std::vector<const SummaryRow*> agent_rows;
        for (const SummaryRow* r : rows) {
            if (r->agent == style.agent) agent_rows.push_back(r);
        }
        if (agent_rows.empty()) continue;
        std::sort(agent_rows.begin(), agent_rows.end(),
                  [](const SummaryRow* a, const SummaryRow* b) { return a->episode < b->episode; });

        std::string points;
        for (const SummaryRow* r : agent_rows) {
            points += num(x_of(r->episode)) + "," + num(y_of(r->trimmed_max)) + " ";
        }
        for (auto it = agent_rows.rbegin(); it != agent_rows.rend(); ++it) {
            points += num(x_of((*it)->episode)) + "," + num(y_of((*it)->trimmed_min)) + " ";
        }
        points.pop_back();
        svg += std::string("<polygon class=\"band-") + agent_tag(style.agent) + "\" points=\"" +
               points + "\" fill=\"" + style.band_color + "\" fill-opacity=\"0.6\" " +
               "stroke=\"none\"/>\n";
    }

    // Reference line: the 2s-2 floor no run can beat.
    const double ref_y = y_of(reference);
    svg += "<line class=\"reference\" data-steps=\"" + std::to_string(reference) + "\" x1=\"" +
           num(kLeft) + "\" y1=\"" + num(ref_y) + "\" x2=\"" + num(kRight) + "\" y2=\"" +
           num(ref_y) + "\" stroke=\"#1d4ed8\" stroke-width=\"1.5\"/>\n";

    for (const AgentStyle& style : kStyles) {
        std::vector<const SummaryRow*> agent_rows;
        for (const SummaryRow* r : rows) {
            if (r->agent == style.agent) agent_rows.push_back(r);
        }
        if (agent_rows.empty()) continue;
        std::sort(agent_rows.begin(), agent_rows.end(),
                  [](const SummaryRow* a, const SummaryRow* b) { return a->episode < b->episode; });
        std::string points;
        for (const SummaryRow* r : agent_rows) {
            points += num(x_of(r->episode)) + "," + num(y_of(r->mean)) + " ";
        }
        points.pop_back();
        svg += std::string("<polyline class=\"mean-") + agent_tag(style.agent) + "\" points=\"" +
               points + "\" fill=\"none\" stroke=\"" + style.line_color +
               "\" stroke-width=\"2\"/>\n";
    }

    // Axes.
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(kRight) +
           "\" y2=\"" + num(kBottom) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(kBottom) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    const int x_step = std::max(1, static_cast<int>(nice_step(max_episode / 6.0)));
    for (int e = 0; e <= max_episode || (max_episode == 0 && e == 0); e += x_step) {
        const double x = x_of(e);
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(kBottom + 5) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + num(x) + "\" y=\"" + num(kBottom + 20) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
               std::to_string(e) + "</text>\n";
        if (max_episode == 0) break;
    }

    const double y_step = nice_step(y_top / 6.0);
    for (double v = 0.0; v <= y_top + 1e-9; v += y_step) {
        const double y = y_of(v);
        svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) +
               "\" y2=\"" + num(y) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + num(kLeft - 9) + "\" y=\"" + num(y + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" +
               label_num(v) + "</text>\n";
    }

    svg += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"" + num(kHeight - 10) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">Episode"
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + num((kTop + kBottom) / 2) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 16 " +
           num((kTop + kBottom) / 2) + ")\">Steps</text>\n";

    // Legend, top right.
    double legend_y = kTop + 8;
    for (const AgentStyle& style : kStyles) {
        const bool present = std::any_of(rows.begin(), rows.end(), [&](const SummaryRow* r) {
            return r->agent == style.agent;
        });
        if (!present) continue;
        svg += "<rect x=\"" + num(kRight - 150) + "\" y=\"" + num(legend_y - 9) +
               "\" width=\"18\" height=\"10\" fill=\"" + style.band_color + "\" stroke=\"" +
               style.line_color + "\"/>\n";
        svg += "<text x=\"" + num(kRight - 126) + "\" y=\"" + num(legend_y) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + agent_tag(style.agent) +
               " mean / trimmed range</text>\n";
        legend_y += 18;
    }
    svg += "<text x=\"" + num(kRight - 150) + "\" y=\"" + num(legend_y) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#1d4ed8\">best possible (" +
           std::to_string(reference) + ")</text>\n";

    svg += "</svg>\n";
    return svg;
}

void render_plot(const std::vector<SummaryRow>& summary, int size,
                 const std::filesystem::path& path) {
    const std::string svg = render_plot_svg(summary, size);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << svg;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

} // namespace rbql
