#include "lattice/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace lattice {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_dataset_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw LatticeError("cannot open output file: " + path);
    out << "# lattice-corr dataset\n";
    out << "# version: " << kCodeVersion << "\n";
    out << "# config: " << ds.meta.dump() << "\n";
    out << "alpha,alphaprime,j,t,value,stderr,method\n";
    for (const auto& row : ds.rows) {
        out << row.idx.alpha << ',' << row.idx.alphaprime << ',' << row.idx.j << ','
            << format_double(row.idx.t) << ',' << format_double(row.value) << ','
            << format_double(row.stderr_) << ',' << row.method << '\n';
    }
}

void write_dataset_json(const Dataset& ds, const std::string& path) {
    nlohmann::json doc;
    doc["meta"] = ds.meta;
    doc["meta"]["version"] = kCodeVersion;
    auto rows = nlohmann::json::array();
    for (const auto& row : ds.rows)
        rows.push_back({row.idx.alpha, row.idx.alphaprime, row.idx.j, row.idx.t,
                        row.value, row.stderr_, row.method});
    doc["rows"] = std::move(rows);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw LatticeError("cannot open output file: " + path);
    out << doc.dump(2) << "\n";
}

namespace {

Dataset read_csv(std::ifstream& in) {
    Dataset ds;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string tag = "# config: ";
            if (line.rfind(tag, 0) == 0)
                ds.meta = nlohmann::json::parse(line.substr(tag.size()));
            continue;
        }
        if (!header_seen) {  // column header
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        CorrelationEntry row;
        std::getline(ss, field, ',');
        row.idx.alpha = std::stoi(field);
        std::getline(ss, field, ',');
        row.idx.alphaprime = std::stoi(field);
        std::getline(ss, field, ',');
        row.idx.j = std::stoll(field);
        std::getline(ss, field, ',');
        row.idx.t = std::stod(field);
        std::getline(ss, field, ',');
        row.value = std::stod(field);
        std::getline(ss, field, ',');
        row.stderr_ = std::stod(field);
        std::getline(ss, field, ',');
        row.method = field;
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

}  // namespace

Dataset read_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LatticeError("cannot open dataset: " + path);
    const int first = in.peek();
    if (first == '{') {
        nlohmann::json doc = nlohmann::json::parse(in);
        Dataset ds;
        ds.meta = doc.value("meta", nlohmann::json::object());
        for (const auto& row : doc.at("rows")) {
            CorrelationEntry entry;
            entry.idx.alpha = row.at(0).get<int>();
            entry.idx.alphaprime = row.at(1).get<int>();
            entry.idx.j = row.at(2).get<long long>();
            entry.idx.t = row.at(3).get<double>();
            entry.value = row.at(4).get<double>();
            entry.stderr_ = row.at(5).get<double>();
            entry.method = row.at(6).get<std::string>();
            ds.rows.push_back(std::move(entry));
        }
        return ds;
    }
    return read_csv(in);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    long n = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CompareReport compare_datasets(const Dataset& a, const Dataset& b) {
    using Key = std::tuple<int, int, long long, double>;
    auto key_of = [](const CorrelationEntry& e) {
        return Key{e.idx.alpha, e.idx.alphaprime, e.idx.j, e.idx.t};
    };
    std::map<Key, const CorrelationEntry*> bmap;
    for (const auto& e : b.rows) bmap[key_of(e)] = &e;
    if (a.rows.size() != b.rows.size())
        throw GridMismatch("datasets carry different numbers of entries");

    CompareReport report;
    report.entries = a.rows.size();
    report.identical = true;
    double sq_sum = 0.0;
    // (alpha, alphaprime, t) -> peak magnitude over j
    std::map<std::tuple<int, int, double>, std::pair<std::pair<double, long long>,
                                                     std::pair<double, long long>>>
        peaks;
    for (const auto& ea : a.rows) {
        auto it = bmap.find(key_of(ea));
        if (it == bmap.end()) throw GridMismatch("entry missing from second dataset");
        const auto& eb = *it->second;
        const double diff = std::abs(ea.value - eb.value);
        if (ea.value != eb.value || ea.stderr_ != eb.stderr_) report.identical = false;
        sq_sum += diff * diff;
        if (diff > report.max_abs_diff) {
            report.max_abs_diff = diff;
            report.worst = ea.idx;
        }
        auto& slot = peaks[{ea.idx.alpha, ea.idx.alphaprime, ea.idx.t}];
        if (std::abs(ea.value) > slot.first.first)
            slot.first = {std::abs(ea.value), ea.idx.j};
        if (std::abs(eb.value) > slot.second.first)
            slot.second = {std::abs(eb.value), eb.idx.j};
    }
    report.rms_diff =
        report.entries ? std::sqrt(sq_sum / static_cast<double>(report.entries)) : 0.0;

    std::map<std::pair<int, int>, PeakFit> fits;
    for (const auto& [key, peak] : peaks) {
        auto& fit = fits[{std::get<0>(key), std::get<1>(key)}];
        fit.alpha = std::get<0>(key);
        fit.alphaprime = std::get<1>(key);
        fit.t.push_back(std::get<2>(key));
        fit.peak_a.push_back(peak.first.first);
        fit.argmax_a.push_back(peak.first.second);
        fit.peak_b.push_back(peak.second.first);
        fit.argmax_b.push_back(peak.second.second);
    }
    for (auto& [key, fit] : fits) {
        fit.slope_a = loglog_slope(fit.t, fit.peak_a);
        fit.slope_b = loglog_slope(fit.t, fit.peak_b);
        report.peaks.push_back(fit);
    }
    return report;
}

nlohmann::json report_to_json(const CompareReport& report) {
    nlohmann::json doc;
    doc["entries"] = report.entries;
    doc["max_abs_diff"] = report.max_abs_diff;
    doc["rms_diff"] = report.rms_diff;
    doc["identical"] = report.identical;
    doc["worst"] = {{"alpha", report.worst.alpha},
                    {"alphaprime", report.worst.alphaprime},
                    {"j", report.worst.j},
                    {"t", report.worst.t}};
    auto peaks = nlohmann::json::array();
    for (const auto& fit : report.peaks) {
        nlohmann::json p;
        p["alpha"] = fit.alpha;
        p["alphaprime"] = fit.alphaprime;
        p["t"] = fit.t;
        p["peak_a"] = fit.peak_a;
        p["peak_b"] = fit.peak_b;
        p["argmax_a"] = fit.argmax_a;
        p["argmax_b"] = fit.argmax_b;
        p["slope_a"] = fit.slope_a;
        p["slope_b"] = fit.slope_b;
        peaks.push_back(std::move(p));
    }
    doc["peaks"] = std::move(peaks);
    return doc;
}

}  // namespace lattice
