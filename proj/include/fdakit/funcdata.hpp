#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace fdakit {

/// Shared sampling grid on [0, T]. Strictly increasing, starts at 0,
/// at least 4 points.
struct TimeGrid {
    std::vector<double> points;

    double T() const { return points.back(); }
    std::size_t size() const { return points.size(); }
    double operator[](std::size_t i) const { return points[i]; }

    static TimeGrid uniform(std::size_t n, double T);

    /// Throws grid_error if the invariants do not hold.
    void validate() const;
};

/// One observed curve: values aligned with a TimeGrid.
struct CurveSample {
    std::string unit;
    std::string group;
    std::string variate;
    std::vector<double> values;
};

/// Balanced collection of curves indexed by (variate d, group g, unit k).
/// Samples are stored d-major: all groups of variate 0 first, control group
/// first within each variate, units in a fixed order within each group.
class FunctionalDataset {
public:
    FunctionalDataset() = default;

    /// Reorders `samples` into canonical layout and checks balance.
    /// `group_order` fixes the group arrangement (control first);
    /// `variate_order` the variate arrangement.
    static FunctionalDataset build(TimeGrid grid, std::vector<CurveSample> samples,
                                   std::vector<std::string> group_order,
                                   std::vector<std::string> variate_order);

    const TimeGrid& grid() const { return grid_; }
    const std::vector<std::string>& group_labels() const { return groups_; }
    const std::vector<std::string>& variate_labels() const { return variates_; }
    int G() const { return static_cast<int>(groups_.size()) - 1; }
    int D() const { return static_cast<int>(variates_.size()); }
    int K() const { return K_; }
    /// Total curve count (G+1)*D*K.
    std::size_t size() const { return samples_.size(); }

    const CurveSample& at(int d, int g, int k) const { return samples_[index(d, g, k)]; }
    const std::vector<CurveSample>& samples() const { return samples_; }
    std::size_t index(int d, int g, int k) const;

    int group_index(const std::string& label) const;  // -1 when absent
    int variate_index(const std::string& label) const;

private:
    TimeGrid grid_;
    std::vector<CurveSample> samples_;
    std::vector<std::string> groups_;
    std::vector<std::string> variates_;
    int K_ = 0;
};

struct LoadOptions {
    /// Common grid length; default is the shortest ingested series.
    std::optional<std::size_t> grid_length;
    /// Control group label; default is the first group in the manifest.
    std::optional<std::string> control_group;
};

/// Ingests OpenFace-style per-unit CSV exports listed in a manifest
/// (columns file,unit,group). Each data file has a `frame` or `time` column
/// plus one column per variate. Every series is rescaled to [0, 1] in time
/// and linearly resampled onto a shared uniform grid.
FunctionalDataset load_dataset(const std::string& manifest_path, const std::string& data_dir,
                               const LoadOptions& opts = {});

/// Piecewise-linear resampling of (source grid, values) onto `target` after
/// rescaling source time so the endpoints coincide. Exact at endpoints and
/// for affine functions of time.
std::vector<double> resample_to_grid(const std::vector<double>& values, const TimeGrid& source,
                                     const TimeGrid& target);
CurveSample resample_to_grid(const CurveSample& sample, const TimeGrid& source,
                             const TimeGrid& target);

/// Canonical on-disk form: header `unit,group,variate,<t0>,<t1>,...` and one
/// row per curve in canonical order. save/load round-trips bit-identically.
void save_dataset_csv(const FunctionalDataset& ds, const std::string& path);
FunctionalDataset load_dataset_csv(const std::string& path);

/// Per-(group, variate) descriptive statistics pooled over units and time.
struct HeatmapCell {
    std::string group;
    std::string variate;
    double mean = 0.0;
    double cv = 0.0;          // population std / mean; 0 with flag when mean == 0
    double normalized = 0.0;  // (mean - neutral mean) / (neutral std + eps)
    bool zero_mean = false;
};

struct HeatmapTable {
    std::string neutral_group;
    std::vector<HeatmapCell> cells;  // group-major, variates in dataset order

    void to_csv(const std::string& path) const;
    nlohmann::json to_json() const;
};

HeatmapTable heatmap_stats(const FunctionalDataset& ds, const std::string& neutral_group);

/// Flag-gated time-binned variant: the same statistics per time bin.
struct BinnedHeatmapCell {
    std::string group;
    std::string variate;
    int bin = 0;
    double t0 = 0.0, t1 = 0.0;
    double mean = 0.0, cv = 0.0, normalized = 0.0;
    bool zero_mean = false;
};

std::vector<BinnedHeatmapCell> heatmap_stats_binned(const FunctionalDataset& ds,
                                                    const std::string& neutral_group, int nbins);

}  // namespace fdakit
