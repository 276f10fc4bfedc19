#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cfx {

/// The eight COICOP-mapped activity sectors. Order is fixed; prediction ties
/// resolve to the lower index.
enum class Sector : std::uint8_t {
    GasStations = 0,
    PrivateTransport,
    PublicTransport,
    Flights,
    ParcelCourier,
    WaterBill,
    ElectricityBill,
    GasBill,
};

constexpr std::size_t kSectorCount = 8;

constexpr std::array<Sector, kSectorCount> all_sectors() {
    return {Sector::GasStations,  Sector::PrivateTransport, Sector::PublicTransport,
            Sector::Flights,      Sector::ParcelCourier,    Sector::WaterBill,
            Sector::ElectricityBill, Sector::GasBill};
}

std::string_view sector_id(Sector s);       // machine id, e.g. "gas_stations"
std::string_view sector_coicop(Sector s);   // "7.2", "7.3", ...
std::string_view sector_name_en(Sector s);  // "car and transport - gas stations"
std::string_view sector_name_es(Sector s);  // "automóvil y transporte - gasolineras"
std::optional<Sector> parse_sector(std::string_view id);

/// One bank transaction: the unit of classification and footprint estimation.
struct Transaction {
    std::string id;
    std::string description;
    double amount_eur = 0.0;
    std::string date;  // ISO-8601, optional
    std::optional<Sector> label;
};

/// Parses a corpus CSV with header `id,description,amount_eur,date,label`.
/// Fields may be RFC-4180 quoted. Malformed rows, negative amounts, unknown
/// sectors and duplicate ids raise errors naming the line.
std::vector<Transaction> load_transactions(const std::string& path);

void save_transactions(const std::string& path, const std::vector<Transaction>& corpus);

/// Levenshtein distance, optionally capped: once the distance provably
/// exceeds `cap`, returns cap + 1 without finishing the table.
std::size_t levenshtein(std::string_view a, std::string_view b,
                        std::size_t cap = static_cast<std::size_t>(-1));

/// Normalized similarity 1 - lev(a,b)/max(|a|,|b|); 1.0 for two empty strings.
double fuzzy_ratio(std::string_view a, std::string_view b);

/// Greedy archetype selection in input order: a transaction is kept iff its
/// description's fuzzy_ratio against every already-kept description is
/// <= threshold.
std::vector<Transaction> deduplicate(const std::vector<Transaction>& corpus,
                                     double threshold = 0.90);

struct FoldSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Stratified k-fold partitions: per-class test counts differ by at most one
/// across folds; deterministic given seed. Throws when a class has fewer than
/// k members or a transaction is unlabeled.
std::vector<FoldSplit> stratified_folds(const std::vector<Transaction>& corpus, std::size_t k,
                                        std::uint64_t seed);

using ConfusionMatrix = std::array<std::array<std::uint64_t, kSectorCount>, kSectorCount>;

struct ScoreResult {
    double accuracy = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    ConfusionMatrix confusion{};  // row = gold, column = predicted
};

/// Exact-match accuracy plus macro-averaged precision/recall over the eight
/// classes; a per-class value with no support is counted as 0.
ScoreResult score_predictions(const std::vector<Sector>& gold, const std::vector<Sector>& pred);

struct EvalFold {
    double accuracy = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double train_seconds = 0.0;
};

struct EvalReport {
    double accuracy = 0.0;         // mean over folds
    double macro_precision = 0.0;  // mean over folds
    double macro_recall = 0.0;     // mean over folds
    double training_time_s = 0.0;  // mean per-fold training time
    std::vector<EvalFold> per_fold;
    ConfusionMatrix confusion{};  // summed over fold test sets
};

/// Seeded synthetic corpus: per-sector description templates over sector
/// keywords, enterprise names, noise tokens and random numbers/codes. Class
/// shares follow the published distribution; every sector appears at least
/// once for n >= 8.
std::vector<Transaction> generate_synthetic_corpus(std::size_t n, std::uint64_t seed);

/// Lemma-level keywords the generator guarantees appear in exactly one
/// sector's descriptions. Ground truth for explainability checks.
const std::vector<std::string>& sector_exclusive_keywords(Sector s);

/// The class shares the generator targets (fractions summing to 1).
const std::array<double, kSectorCount>& synthetic_class_shares();

}  // namespace cfx
