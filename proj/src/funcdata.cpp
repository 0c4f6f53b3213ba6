#include "fdakit/funcdata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "fdakit/csvio.hpp"
#include "fdakit/errors.hpp"

namespace fdakit {

TimeGrid TimeGrid::uniform(std::size_t n, double T) {
    TimeGrid g;
    g.points.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        g.points[i] = (i + 1 == n) ? T : T * static_cast<double>(i) / static_cast<double>(n - 1);
    g.validate();
    return g;
}

void TimeGrid::validate() const {
    if (points.size() < 4) throw grid_error("time grid needs at least 4 points");
    if (points.front() != 0.0) throw grid_error("time grid must start at 0");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i] > points[i - 1])) throw grid_error("time grid must be strictly increasing");
    if (!(points.back() > 0.0) || !std::isfinite(points.back()))
        throw grid_error("time grid end T must be positive and finite");
}

std::size_t FunctionalDataset::index(int d, int g, int k) const {
    return (static_cast<std::size_t>(d) * groups_.size() + static_cast<std::size_t>(g)) * K_ + k;
}

int FunctionalDataset::group_index(const std::string& label) const {
    for (std::size_t i = 0; i < groups_.size(); ++i)
        if (groups_[i] == label) return static_cast<int>(i);
    return -1;
}

int FunctionalDataset::variate_index(const std::string& label) const {
    for (std::size_t i = 0; i < variates_.size(); ++i)
        if (variates_[i] == label) return static_cast<int>(i);
    return -1;
}

FunctionalDataset FunctionalDataset::build(TimeGrid grid, std::vector<CurveSample> samples,
                                           std::vector<std::string> group_order,
                                           std::vector<std::string> variate_order) {
    grid.validate();
    if (group_order.empty() || variate_order.empty())
        throw contract_error("dataset needs at least one group and one variate");

    for (const auto& s : samples) {
        if (s.values.size() != grid.size())
            throw contract_error("sample " + s.unit + "/" + s.group + "/" + s.variate +
                                 " has " + std::to_string(s.values.size()) +
                                 " values, grid has " + std::to_string(grid.size()));
        for (double v : s.values)
            if (!std::isfinite(v))
                throw contract_error("non-finite value in sample " + s.unit + "/" + s.group +
                                     "/" + s.variate);
    }

    // bucket units per (group, variate), preserving sample order
    std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> cells;
    for (std::size_t i = 0; i < samples.size(); ++i)
        cells[{samples[i].group, samples[i].variate}].push_back(i);

    std::size_t K = 0;
    bool first_cell = true;
    std::string counts;
    bool balanced = true;
    for (const auto& g : group_order) {
        for (const auto& d : variate_order) {
            const auto it = cells.find({g, d});
            const std::size_t c = (it == cells.end()) ? 0 : it->second.size();
            if (first_cell) {
                K = c;
                first_cell = false;
            } else if (c != K) {
                balanced = false;
            }
            counts += g + "/" + d + ": " + std::to_string(c) + "; ";
        }
    }
    if (cells.size() != group_order.size() * variate_order.size() || !balanced || K < 2)
        throw balance_error("unbalanced design (every group/variate cell needs the same K >= 2): " +
                            counts);

    FunctionalDataset ds;
    ds.grid_ = std::move(grid);
    ds.groups_ = std::move(group_order);
    ds.variates_ = std::move(variate_order);
    ds.K_ = static_cast<int>(K);
    ds.samples_.reserve(samples.size());
    for (const auto& d : ds.variates_)
        for (const auto& g : ds.groups_)
            for (std::size_t idx : cells.at({g, d})) ds.samples_.push_back(std::move(samples[idx]));
    return ds;
}

std::vector<double> resample_to_grid(const std::vector<double>& values, const TimeGrid& source,
                                     const TimeGrid& target) {
    source.validate();
    target.validate();
    if (values.size() != source.size())
        throw contract_error("resample: values/grid length mismatch");

    // rescale source time so both grids span [0, T_target]
    const double scale = target.T() / source.T();
    std::vector<double> u(source.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = source[i] * scale;

    std::vector<double> out(target.size());
    std::size_t seg = 0;
    for (std::size_t j = 0; j < target.size(); ++j) {
        const double t = target[j];
        if (t <= u.front()) {
            out[j] = values.front();
            continue;
        }
        if (t >= u.back()) {
            out[j] = values.back();
            continue;
        }
        while (u[seg + 1] < t) ++seg;
        const double w = (t - u[seg]) / (u[seg + 1] - u[seg]);
        out[j] = values[seg] + w * (values[seg + 1] - values[seg]);
    }
    return out;
}

CurveSample resample_to_grid(const CurveSample& sample, const TimeGrid& source,
                             const TimeGrid& target) {
    CurveSample out = sample;
    out.values = resample_to_grid(sample.values, source, target);
    return out;
}

namespace {

struct ManifestEntry {
    std::string file, unit, group;
};

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    const auto t = csv::read_table(path);
    if (t.header.size() != 3 || t.header[0] != "file" || t.header[1] != "unit" ||
        t.header[2] != "group")
        throw parse_error(path + ": manifest header must be 'file,unit,group'");
    std::vector<ManifestEntry> entries;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : t.rows) {
        if (!seen.insert({r[1], r[2]}).second)
            throw parse_error(path + ": duplicate unit/group pair " + r[1] + "/" + r[2]);
        entries.push_back({r[0], r[1], r[2]});
    }
    if (entries.empty()) throw parse_error(path + ": empty manifest");
    return entries;
}

}  // namespace

FunctionalDataset load_dataset(const std::string& manifest_path, const std::string& data_dir,
                               const LoadOptions& opts) {
    const auto manifest = read_manifest(manifest_path);

    struct RawSeries {
        ManifestEntry entry;
        TimeGrid times;
        std::vector<std::vector<double>> columns;  // per variate
    };
    std::vector<RawSeries> raw;
    std::vector<std::string> variates;
    std::vector<std::string> groups;
    std::size_t min_len = SIZE_MAX;

    for (const auto& e : manifest) {
        const std::string path = data_dir.empty() ? e.file : data_dir + "/" + e.file;
        csv::Table t;
        try {
            t = csv::read_table(path);
        } catch (const io_error&) {
            throw io_error("manifest entry '" + e.file + "': missing file " + path);
        }
        if (t.header.empty() || (t.header[0] != "frame" && t.header[0] != "time"))
            throw parse_error(path + ": first column must be 'frame' or 'time'");
        std::vector<std::string> file_variates(t.header.begin() + 1, t.header.end());
        if (file_variates.empty()) throw parse_error(path + ": no variate columns");
        if (variates.empty())
            variates = file_variates;
        else if (variates != file_variates)
            throw parse_error(path + ": variate columns differ from first file");

        RawSeries rs;
        rs.entry = e;
        rs.columns.assign(variates.size(), {});
        std::vector<double> times;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            times.push_back(csv::parse_cell(t.rows[r][0], path, r + 2, 1));
            for (std::size_t c = 1; c < t.header.size(); ++c)
                rs.columns[c - 1].push_back(csv::parse_cell(t.rows[r][c], path, r + 2, c + 1));
        }
        // shift so every series starts at 0, then validate as a grid
        if (times.size() < 4) throw parse_error(path + ": fewer than 4 time points");
        const double t0 = times.front();
        for (double& tt : times) tt -= t0;
        rs.times.points = std::move(times);
        try {
            rs.times.validate();
        } catch (const grid_error& ge) {
            throw parse_error(path + ": bad time column: " + ge.what());
        }
        min_len = std::min(min_len, rs.times.size());
        if (std::find(groups.begin(), groups.end(), e.group) == groups.end())
            groups.push_back(e.group);
        raw.push_back(std::move(rs));
    }

    if (opts.control_group) {
        const auto it = std::find(groups.begin(), groups.end(), *opts.control_group);
        if (it == groups.end())
            throw contract_error("control group '" + *opts.control_group + "' not in manifest");
        std::rotate(groups.begin(), it, it + 1);
    }

    const std::size_t grid_len = opts.grid_length.value_or(min_len);
    const TimeGrid grid = TimeGrid::uniform(grid_len, 1.0);

    std::vector<CurveSample> samples;
    samples.reserve(raw.size() * variates.size());
    for (const auto& rs : raw)
        for (std::size_t d = 0; d < variates.size(); ++d) {
            CurveSample s;
            s.unit = rs.entry.unit;
            s.group = rs.entry.group;
            s.variate = variates[d];
            s.values = resample_to_grid(rs.columns[d], rs.times, grid);
            samples.push_back(std::move(s));
        }
    return FunctionalDataset::build(grid, std::move(samples), groups, variates);
}

void save_dataset_csv(const FunctionalDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << "unit,group,variate";
    for (double t : ds.grid().points) out << ',' << csv::g17(t);
    out << '\n';
    for (const auto& s : ds.samples()) {
        out << s.unit << ',' << s.group << ',' << s.variate;
        for (double v : s.values) out << ',' << csv::g17(v);
        out << '\n';
    }
}

FunctionalDataset load_dataset_csv(const std::string& path) {
    const auto t = csv::read_table(path);
    if (t.header.size() < 7 || t.header[0] != "unit" || t.header[1] != "group" ||
        t.header[2] != "variate")
        throw parse_error(path + ": expected canonical header unit,group,variate,<times...>");
    TimeGrid grid;
    for (std::size_t c = 3; c < t.header.size(); ++c)
        grid.points.push_back(csv::parse_cell(t.header[c], path, 1, c + 1));
    grid.validate();

    std::vector<CurveSample> samples;
    std::vector<std::string> groups, variates;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        CurveSample s;
        s.unit = t.rows[r][0];
        s.group = t.rows[r][1];
        s.variate = t.rows[r][2];
        for (std::size_t c = 3; c < t.header.size(); ++c)
            s.values.push_back(csv::parse_cell(t.rows[r][c], path, r + 2, c + 1));
        if (std::find(groups.begin(), groups.end(), s.group) == groups.end())
            groups.push_back(s.group);
        if (std::find(variates.begin(), variates.end(), s.variate) == variates.end())
            variates.push_back(s.variate);
        samples.push_back(std::move(s));
    }
    return FunctionalDataset::build(std::move(grid), std::move(samples), groups, variates);
}

namespace {

struct PoolStats {
    double mean = 0.0, std = 0.0;
};

PoolStats pool_stats(const FunctionalDataset& ds, int d, int g, std::size_t i0, std::size_t i1) {
    double sum = 0.0;
    std::size_t n = 0;
    for (int k = 0; k < ds.K(); ++k) {
        const auto& v = ds.at(d, g, k).values;
        for (std::size_t i = i0; i < i1; ++i) sum += v[i];
        n += i1 - i0;
    }
    PoolStats st;
    st.mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (int k = 0; k < ds.K(); ++k) {
        const auto& v = ds.at(d, g, k).values;
        for (std::size_t i = i0; i < i1; ++i) {
            const double dev = v[i] - st.mean;
            ss += dev * dev;
        }
    }
    st.std = std::sqrt(ss / static_cast<double>(n));
    return st;
}

constexpr double kNormEps = 1e-9;

}  // namespace

HeatmapTable heatmap_stats(const FunctionalDataset& ds, const std::string& neutral_group) {
    const int neutral = ds.group_index(neutral_group);
    if (neutral < 0) throw selection_error("unknown neutral group: " + neutral_group);
    const std::size_t n = ds.grid().size();

    HeatmapTable table;
    table.neutral_group = neutral_group;
    std::vector<PoolStats> neutral_stats(ds.D());
    for (int d = 0; d < ds.D(); ++d) neutral_stats[d] = pool_stats(ds, d, neutral, 0, n);

    for (int g = 0; g <= ds.G(); ++g)
        for (int d = 0; d < ds.D(); ++d) {
            const PoolStats st = pool_stats(ds, d, g, 0, n);
            HeatmapCell cell;
            cell.group = ds.group_labels()[g];
            cell.variate = ds.variate_labels()[d];
            cell.mean = st.mean;
            cell.zero_mean = (st.mean == 0.0);
            cell.cv = cell.zero_mean ? 0.0 : st.std / std::fabs(st.mean);
            cell.normalized = (st.mean - neutral_stats[d].mean) / (neutral_stats[d].std + kNormEps);
            table.cells.push_back(std::move(cell));
        }
    return table;
}

std::vector<BinnedHeatmapCell> heatmap_stats_binned(const FunctionalDataset& ds,
                                                    const std::string& neutral_group, int nbins) {
    const int neutral = ds.group_index(neutral_group);
    if (neutral < 0) throw selection_error("unknown neutral group: " + neutral_group);
    if (nbins < 1) throw contract_error("nbins must be >= 1");
    const std::size_t n = ds.grid().size();

    std::vector<BinnedHeatmapCell> cells;
    for (int b = 0; b < nbins; ++b) {
        const std::size_t i0 = n * static_cast<std::size_t>(b) / nbins;
        const std::size_t i1 = n * static_cast<std::size_t>(b + 1) / nbins;
        if (i0 >= i1) throw contract_error("more bins than grid points");
        std::vector<PoolStats> neutral_stats(ds.D());
        for (int d = 0; d < ds.D(); ++d) neutral_stats[d] = pool_stats(ds, d, neutral, i0, i1);
        for (int g = 0; g <= ds.G(); ++g)
            for (int d = 0; d < ds.D(); ++d) {
                const PoolStats st = pool_stats(ds, d, g, i0, i1);
                BinnedHeatmapCell cell;
                cell.group = ds.group_labels()[g];
                cell.variate = ds.variate_labels()[d];
                cell.bin = b;
                cell.t0 = ds.grid()[i0];
                cell.t1 = ds.grid()[i1 - 1];
                cell.mean = st.mean;
                cell.zero_mean = (st.mean == 0.0);
                cell.cv = cell.zero_mean ? 0.0 : st.std / std::fabs(st.mean);
                cell.normalized =
                    (st.mean - neutral_stats[d].mean) / (neutral_stats[d].std + kNormEps);
                cells.push_back(std::move(cell));
            }
    }
    return cells;
}

void HeatmapTable::to_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << "group,variate,mean,cv,normalized\n";
    for (const auto& c : cells)
        out << c.group << ',' << c.variate << ',' << csv::g17(c.mean) << ',' << csv::g17(c.cv)
            << ',' << csv::g17(c.normalized) << '\n';
}

nlohmann::json HeatmapTable::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : cells)
        rows.push_back({{"group", c.group},
                        {"variate", c.variate},
                        {"mean", c.mean},
                        {"cv", c.cv},
                        {"normalized", c.normalized},
                        {"zero_mean", c.zero_mean}});
    return nlohmann::json{{"neutral_group", neutral_group}, {"cells", rows}};
}

}  // namespace fdakit
