#pragma once

#include "ets/value.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ets::store {

enum class ColumnKind { Text, Integer, Decimal, Year, UnitDecimal };

struct ColumnType {
    ColumnKind kind = ColumnKind::Text;
    std::string unit; // set only for UnitDecimal; must name a registered unit
};

struct Column {
    std::string name;
    ColumnType type;
};

/// Declared shape of one canonical table: ordered columns, the key column,
/// and foreign keys as (column -> target table).
struct TableSchema {
    std::string name;
    std::vector<Column> columns;
    std::string key_column;
    std::vector<std::pair<std::string, std::string>> foreign_keys;

    int column_index(const std::string& column) const;
    const ColumnType& column_type(const std::string& column) const;
};

struct Table {
    std::string name;
    std::vector<Column> columns;
    std::vector<std::vector<Value>> rows;
    std::string key_column;

    int column_index(const std::string& column) const;
    Ref row_ref(std::size_t row) const;
};

/// The NIMs-shaped relational vocabulary all mapped queries run over.
const std::vector<TableSchema>& canonical_schema();
const TableSchema& table_schema(const std::string& name);
bool is_canonical_table(const std::string& name);

struct Dataset {
    std::map<std::string, Table> tables; // keyed by table name, deterministic order
    std::string schema_version = "1";

    const Table& table(const std::string& name) const; // throws LookupError
    Table& table(const std::string& name);
    bool has_table(const std::string& name) const { return tables.count(name) != 0; }

    /// All canonical tables present and empty.
    static Dataset empty_canonical();
};

/// Reads one CSV per canonical table from `dir` (header row first).
/// plant.csv is required; other canonical tables default to empty.
/// Validates types, key uniqueness, and referential integrity; errors name
/// the file, row, and column.
Dataset ingest_csv(const std::filesystem::path& dir);

/// One CSV per table, header first, rows in stored order. Numeric cells use
/// shortest round-trip formatting, so ingest(export(d)) == d.
void export_csv(const Dataset& dataset, const std::filesystem::path& dir);

bool dataset_equal(const Dataset& a, const Dataset& b);

Value parse_cell(const std::string& text, const ColumnType& type,
                 const std::string& where); // throws ParseError on mismatch

} // namespace ets::store
