#include "julpot/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace julpot {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IOError("cannot open for writing: " + path);
    out << contents;
    if (!out) throw IOError("write failed: " + path);
}

void write_pgm(const GridSet& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IOError("cannot open for writing: " + path);
    out << "P5\n" << g.width() << " " << g.height() << "\n255\n";
    std::string row(g.width(), '\0');
    for (int iy = g.height() - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < g.width(); ++ix)
            row[ix] = g.occupied(ix, iy) ? char(0) : char(255);
        out.write(row.data(), row.size());
    }
    if (!out) throw IOError("write failed: " + path);

    nlohmann::json side;
    side["origin"] = {g.origin().real(), g.origin().imag()};
    side["h"] = g.cell_size();
    side["width"] = g.width();
    side["height"] = g.height();
    write_text_file(path + ".json", side.dump(2) + "\n");
}

GridSet read_pgm(const std::string& path) {
    std::ifstream side_in(path + ".json");
    if (!side_in) throw IOError("missing sidecar: " + path + ".json");
    nlohmann::json side = nlohmann::json::parse(side_in);
    cplx origin{side.at("origin")[0].get<double>(), side.at("origin")[1].get<double>()};
    GridSet g(origin, side.at("h").get<double>(), side.at("width").get<int>(),
              side.at("height").get<int>());

    std::ifstream in(path, std::ios::binary);
    if (!in) throw IOError("cannot open: " + path);
    std::string magic;
    int w, h, maxval;
    in >> magic >> w >> h >> maxval;
    if (magic != "P5" || w != g.width() || h != g.height())
        throw IOError("PGM header mismatch: " + path);
    in.get();  // single whitespace after maxval
    std::string row(w, '\0');
    for (int iy = h - 1; iy >= 0; --iy) {
        in.read(row.data(), row.size());
        if (!in) throw IOError("PGM truncated: " + path);
        for (int ix = 0; ix < w; ++ix) g.set(ix, iy, row[ix] == char(0));
    }
    return g;
}

void write_measure_csv(const DiscreteMeasure& mu, const std::string& path) {
    std::ostringstream out;
    out << "re,im,weight\n";
    for (size_t i = 0; i < mu.size(); ++i)
        out << format_real(mu.points()[i].real()) << "," << format_real(mu.points()[i].imag())
            << "," << format_real(mu.weights()[i]) << "\n";
    write_text_file(path, out.str());
}

DiscreteMeasure read_measure_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw IOError("empty csv: " + path);
    PointCloud pts;
    std::vector<double> w;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double re, im, wt;
        char c1, c2;
        if (!(ss >> re >> c1 >> im >> c2 >> wt)) throw IOError("bad csv row: " + line);
        pts.emplace_back(re, im);
        w.push_back(wt);
    }
    return DiscreteMeasure(std::move(pts), std::move(w));
}

std::string poly_to_json(const Polynomial& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (cplx a : p.coeffs()) arr.push_back({a.real(), a.imag()});
    return arr.dump();
}

Polynomial poly_from_json(const std::string& text) {
    nlohmann::json arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw IOError("polynomial JSON must be an array of [re, im] pairs");
    std::vector<cplx> coeffs;
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 2)
            throw IOError("polynomial JSON must be an array of [re, im] pairs");
        coeffs.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return Polynomial(std::move(coeffs));
}

}  // namespace julpot
