#include "ets/store.hpp"

#include "ets/csv.hpp"
#include "ets/errors.hpp"

#include <charconv>
#include <set>
#include <unordered_set>

namespace ets::store {

namespace {

ColumnType text() { return {ColumnKind::Text, ""}; }
ColumnType integer() { return {ColumnKind::Integer, ""}; }
ColumnType decimal() { return {ColumnKind::Decimal, ""}; }
ColumnType year() { return {ColumnKind::Year, ""}; }
ColumnType qty(const std::string& unit) { return {ColumnKind::UnitDecimal, unit}; }

std::vector<TableSchema> build_canonical_schema() {
    std::vector<TableSchema> s;
    s.push_back({"plant",
                 {{"id", integer()},
                  {"name", text()},
                  {"nace_code", text()},
                  {"ets_activity", text()},
                  {"sector_ref", integer()}},
                 "id",
                 {{"sector_ref", "industrial_sector"}}});
    s.push_back({"industrial_sector", {{"id", integer()}, {"name", text()}}, "id", {}});
    s.push_back({"natural_gas_burning",
                 {{"id", integer()},
                  {"plant_ref", integer()},
                  {"year", year()},
                  {"quantity", qty("Sm3")},
                  {"unit_of_measure", text()}},
                 "id",
                 {{"plant_ref", "plant"}}});
    s.push_back({"total_plant_co2_emissions",
                 {{"id", integer()},
                  {"plant_ref", integer()},
                  {"year", year()},
                  {"quantity", qty("tCO2")},
                  {"ng_quantity", qty("tCO2")},
                  {"natural_gas_burning_ref", integer()},
                  {"unit_of_measure", text()}},
                 "id",
                 {{"plant_ref", "plant"}, {"natural_gas_burning_ref", "natural_gas_burning"}}});
    s.push_back({"allocated_co2_emissions",
                 {{"id", integer()}, {"plant_ref", integer()}, {"year", year()}, {"quantity", qty("tCO2")}},
                 "id",
                 {{"plant_ref", "plant"}}});
    s.push_back({"co2_price", {{"year", year()}, {"value", decimal()}}, "year", {}});
    s.push_back({"co2_emissions_by_industrial_sector",
                 {{"id", integer()}, {"sector_ref", integer()}, {"year", year()}, {"quantity", qty("tCO2")}},
                 "id",
                 {{"sector_ref", "industrial_sector"}}});
    s.push_back({"annual_ets_scenario",
                 {{"id", integer()}, {"scenario", text()}, {"year", year()}, {"energy_price", decimal()}},
                 "id",
                 {}});
    s.push_back({"annual_ets_scenario_by_industrial_sector",
                 {{"id", integer()},
                  {"annual_ets_scenario_ref", integer()},
                  {"sector_ref", integer()},
                  {"employment", decimal()}},
                 "id",
                 {{"annual_ets_scenario_ref", "annual_ets_scenario"},
                  {"sector_ref", "industrial_sector"}}});
    s.push_back({"consumer",
                 {{"id", integer()}, {"monthly_consumption", qty("GWh")}, {"a2_taxation", decimal()}},
                 "id",
                 {}});
    s.push_back({"product", {{"id", integer()}, {"prodcom_code", text()}}, "id", {}});
    s.push_back({"activity", {{"id", integer()}, {"nace_code", text()}}, "id", {}});
    s.push_back({"fuel_use",
                 {{"id", integer()},
                  {"plant_ref", integer()},
                  {"year", year()},
                  {"fuel_type", text()},
                  {"quantity", decimal()},
                  {"unit", text()}},
                 "id",
                 {{"plant_ref", "plant"}}});
    s.push_back({"subsector_energy",
                 {{"id", integer()},
                  {"subsector_ref", integer()},
                  {"year", year()},
                  {"total_consumption", qty("GJ")}},
                 "id",
                 {{"subsector_ref", "industrial_sector"}}});
    s.push_back({"company_energy",
                 {{"id", integer()},
                  {"company", text()},
                  {"subsector_ref", integer()},
                  {"year", year()},
                  {"consumption", qty("GJ")}},
                 "id",
                 {{"subsector_ref", "industrial_sector"}}});
    return s;
}

Table empty_table(const TableSchema& schema) {
    return Table{schema.name, schema.columns, {}, schema.key_column};
}

} // namespace

int TableSchema::column_index(const std::string& column) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].name == column) return static_cast<int>(i);
    return -1;
}

const ColumnType& TableSchema::column_type(const std::string& column) const {
    int i = column_index(column);
    if (i < 0) throw LookupError("table '" + name + "' has no column '" + column + "'");
    return columns[static_cast<std::size_t>(i)].type;
}

int Table::column_index(const std::string& column) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].name == column) return static_cast<int>(i);
    return -1;
}

Ref Table::row_ref(std::size_t row) const {
    int k = column_index(key_column);
    const Value& v = rows[row][static_cast<std::size_t>(k)];
    if (const auto* i = std::get_if<std::int64_t>(&v)) return Ref{name, *i};
    return Ref{name, std::get<std::string>(v)};
}

const std::vector<TableSchema>& canonical_schema() {
    static const std::vector<TableSchema> schema = build_canonical_schema();
    return schema;
}

const TableSchema& table_schema(const std::string& name) {
    for (const auto& t : canonical_schema())
        if (t.name == name) return t;
    throw LookupError("unknown table '" + name + "'");
}

bool is_canonical_table(const std::string& name) {
    for (const auto& t : canonical_schema())
        if (t.name == name) return true;
    return false;
}

const Table& Dataset::table(const std::string& name) const {
    auto it = tables.find(name);
    if (it == tables.end()) throw LookupError("unknown table '" + name + "'");
    return it->second;
}

Table& Dataset::table(const std::string& name) {
    auto it = tables.find(name);
    if (it == tables.end()) throw LookupError("unknown table '" + name + "'");
    return it->second;
}

Dataset Dataset::empty_canonical() {
    Dataset d;
    for (const auto& schema : canonical_schema()) d.tables.emplace(schema.name, empty_table(schema));
    return d;
}

Value parse_cell(const std::string& cell, const ColumnType& type, const std::string& where) {
    switch (type.kind) {
        case ColumnKind::Text: return cell;
        case ColumnKind::Integer:
        case ColumnKind::Year: {
            std::int64_t v = 0;
            auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
                throw ParseError(where + ": expected integer, got '" + cell + "'");
            return v;
        }
        case ColumnKind::Decimal:
        case ColumnKind::UnitDecimal: {
            double v = 0;
            auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
                throw ParseError(where + ": expected decimal, got '" + cell + "'");
            return v;
        }
    }
    throw Error("unreachable column kind");
}

namespace {

Table load_table(const std::filesystem::path& file, const TableSchema& schema) {
    auto records = csv::read_file(file);
    const std::string fname = file.filename().string();
    if (records.empty()) throw SchemaError(fname + ": missing header row");

    const auto& header = records.front();
    if (header.size() != schema.columns.size()) {
        // Point at the first missing declared column, if any.
        for (const auto& col : schema.columns) {
            bool found = false;
            for (const auto& h : header) found = found || h == col.name;
            if (!found)
                throw SchemaError(fname + ": missing required column '" + schema.name + "." +
                                  col.name + "'");
        }
        throw SchemaError(fname + ": expected " + std::to_string(schema.columns.size()) +
                          " columns, got " + std::to_string(header.size()));
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] != schema.columns[i].name)
            throw SchemaError(fname + ": column " + std::to_string(i + 1) + " is '" + header[i] +
                              "', expected '" + schema.columns[i].name + "' (missing required column '" +
                              schema.name + "." + schema.columns[i].name + "'?)");
    }

    Table table = empty_table(schema);
    table.rows.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& record = records[r];
        if (record.size() != schema.columns.size())
            throw SchemaError(fname + " row " + std::to_string(r) + ": expected " +
                              std::to_string(schema.columns.size()) + " cells, got " +
                              std::to_string(record.size()));
        std::vector<Value> row;
        row.reserve(record.size());
        for (std::size_t c = 0; c < record.size(); ++c) {
            std::string where = fname + " row " + std::to_string(r) + ", column " +
                                schema.columns[c].name;
            row.push_back(parse_cell(record[c], schema.columns[c].type, where));
        }
        table.rows.push_back(std::move(row));
    }

    // Keys must be unique; report the first duplicate in file order.
    int k = table.column_index(schema.key_column);
    std::set<Value> seen;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const Value& key = table.rows[r][static_cast<std::size_t>(k)];
        auto [it, inserted] = seen.insert(key);
        if (!inserted)
            throw SchemaError(fname + " row " + std::to_string(r + 1) + ", column " +
                              schema.key_column + ": duplicate key '" + to_text(key) + "'");
    }
    return table;
}

void check_foreign_keys(const Dataset& dataset) {
    for (const auto& schema : canonical_schema()) {
        const Table& table = dataset.table(schema.name);
        for (const auto& [fk_col, target_name] : schema.foreign_keys) {
            const Table& target = dataset.table(target_name);
            int kc = target.column_index(target.key_column);
            std::set<Value> keys;
            for (const auto& row : target.rows) keys.insert(row[static_cast<std::size_t>(kc)]);
            int fc = table.column_index(fk_col);
            for (std::size_t r = 0; r < table.rows.size(); ++r) {
                const Value& v = table.rows[r][static_cast<std::size_t>(fc)];
                if (!keys.count(v))
                    throw SchemaError(schema.name + ".csv row " + std::to_string(r + 1) +
                                      ", column " + fk_col + ": dangling foreign key '" +
                                      to_text(v) + "' into " + target_name);
            }
        }
    }
}

} // namespace

Dataset ingest_csv(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw Error("not a directory: " + dir.string());
    Dataset dataset;
    for (const auto& schema : canonical_schema()) {
        auto file = dir / (schema.name + ".csv");
        if (std::filesystem::exists(file)) {
            dataset.tables.emplace(schema.name, load_table(file, schema));
        } else if (schema.name == "plant") {
            throw SchemaError("missing required table 'plant' (" + file.string() + ")");
        } else {
            dataset.tables.emplace(schema.name, empty_table(schema));
        }
    }
    check_foreign_keys(dataset);
    return dataset;
}

void export_csv(const Dataset& dataset, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, table] : dataset.tables) {
        std::vector<std::vector<std::string>> records;
        records.reserve(table.rows.size() + 1);
        std::vector<std::string> header;
        for (const auto& col : table.columns) header.push_back(col.name);
        records.push_back(std::move(header));
        for (const auto& row : table.rows) {
            std::vector<std::string> record;
            record.reserve(row.size());
            for (const auto& v : row) record.push_back(to_text(v));
            records.push_back(std::move(record));
        }
        csv::write_file(dir / (name + ".csv"), records);
    }
}

bool dataset_equal(const Dataset& a, const Dataset& b) {
    if (a.schema_version != b.schema_version) return false;
    if (a.tables.size() != b.tables.size()) return false;
    for (auto ita = a.tables.begin(), itb = b.tables.begin(); ita != a.tables.end(); ++ita, ++itb) {
        if (ita->first != itb->first) return false;
        const Table& ta = ita->second;
        const Table& tb = itb->second;
        if (ta.rows.size() != tb.rows.size() || ta.columns.size() != tb.columns.size()) return false;
        for (std::size_t c = 0; c < ta.columns.size(); ++c)
            if (ta.columns[c].name != tb.columns[c].name) return false;
        for (std::size_t r = 0; r < ta.rows.size(); ++r)
            for (std::size_t c = 0; c < ta.columns.size(); ++c)
                if (!(ta.rows[r][c] == tb.rows[r][c])) return false;
    }
    return true;
}

} // namespace ets::store
