#pragma once

// Phase-portrait rendering of the state grid. Cell colour encodes the
// same-state preference profile; states whose only long-run outcome is full
// integration (the basin of the everyone-on-m corner) are overlaid; absorbing
// states are starred. n_am runs left to right, n_bm bottom to top.

#include "segsim/dynamics.hpp"
#include "segsim/io.hpp"
#include "segsim/payoffs.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace segsim {

namespace detail {

struct MapData {
    Grid grid;
    std::vector<char> cell;      // 'B', 'R', '.', '?'
    std::vector<char> integrated;  // in basin of the all-on-m corner
    std::vector<char> absorbing;
};

inline MapData map_data(const Params& p, Semantics sem, double tol) {
    MapData md{Grid(p), {}, {}, {}};
    md.cell.resize(md.grid.size());
    md.integrated.assign(md.grid.size(), 0);
    md.absorbing.assign(md.grid.size(), 0);
    TransitionGraph g = build_graph(p, sem, tol);
    for (int i = 0; i < md.grid.size(); ++i) {
        State s = md.grid.state(i);
        PrefProfile prof = preference_profile(s, p, tol);
        char c = '?';  // some group indifferent
        if (prof.a == Pref::prefers_l && prof.b == Pref::prefers_m)
            c = 'B';
        else if (prof.a == Pref::prefers_m && prof.b == Pref::prefers_l)
            c = 'R';
        else if (prof.a == Pref::prefers_m && prof.b == Pref::prefers_m)
            c = '.';
        else if (prof.a == Pref::prefers_l && prof.b == Pref::prefers_l)
            c = '+';
        md.cell[i] = c;
        md.absorbing[i] = g.edges[i].empty() ? 1 : 0;
    }
    State ll = corner_state(Corner::ll, p);
    if (g.edges[md.grid.index(ll)].empty()) {
        BasinReport rep = basin(ll, g);
        for (const State& s : rep.basin) md.integrated[md.grid.index(s)] = 1;
    }
    return md;
}

}  // namespace detail

// One text row per n_bm value (top row n_bm = n_b), one two-character cell
// per n_am value. Leading '#' lines carry parameters and the legend.
inline std::string ascii_map(const Params& p, Semantics sem,
                             double tol = kDefaultTol) {
    detail::MapData md = detail::map_data(p, sem, tol);
    std::ostringstream out;
    out << params_comment(p) << "\n";
    out << "# semantics=" << to_string(sem) << "\n";
    out << "# rows n_bm=" << p.n_b << "(top)..0  cols n_am=0.." << p.n_a
        << "\n";
    out << "# B: only A-group prefers l   R: only B-group prefers l"
           "   .: both prefer m   +: both prefer l\n";
    out << "# M: basin of full integration   *: absorbing   ?: indifference\n";
    for (int b = p.n_b; b >= 0; --b) {
        for (int a = 0; a <= p.n_a; ++a) {
            int i = md.grid.index({a, b});
            char c = md.integrated[i] ? 'M' : md.cell[i];
            out << c << (md.absorbing[i] ? '*' : ' ');
            if (a < p.n_a) out << ' ';
        }
        out << "\n";
    }
    return out.str();
}

// Same data as an SVG scatter: blue/red/hollow discs, magenta for the
// integration basin, larger discs for absorbing states.
inline std::string svg_map(const Params& p, Semantics sem,
                           double tol = kDefaultTol) {
    detail::MapData md = detail::map_data(p, sem, tol);
    const int cell = 24, margin = 40;
    const int width = margin * 2 + cell * p.n_a;
    const int height = margin * 2 + cell * p.n_b;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n";
    out << "<!-- " << params_comment(p) << " semantics=" << to_string(sem)
        << " -->\n";
    out << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#FFFFFF\"/>\n";
    for (int b = 0; b <= p.n_b; ++b) {
        for (int a = 0; a <= p.n_a; ++a) {
            int i = md.grid.index({a, b});
            const char* fill = "#FFFFFF";
            if (md.integrated[i]) fill = "#FF00FF";
            else if (md.cell[i] == 'B') fill = "#0000FF";
            else if (md.cell[i] == 'R') fill = "#FF0000";
            else if (md.cell[i] == '+') fill = "#FFA500";
            else if (md.cell[i] == '?') fill = "#808080";
            int cx = margin + cell * a;
            int cy = margin + cell * (p.n_b - b);
            int r = md.absorbing[i] ? 9 : 5;
            out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r
                << "\" fill=\"" << fill
                << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
        }
    }
    out << "<text x=\"" << margin << "\" y=\"" << height - 8
        << "\" font-size=\"12\">n_am 0.." << p.n_a << "</text>\n";
    out << "<text x=\"8\" y=\"" << margin - 16
        << "\" font-size=\"12\">n_bm 0.." << p.n_b << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace segsim
