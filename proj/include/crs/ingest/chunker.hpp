#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace crs {

// One episode of one drama, raw UTF-8 text.
struct ScriptDocument {
    std::string drama_id;
    int episode = 1;  // within [1, 4]
    std::string text;
};

struct Chunk {
    std::size_t index = 0;
    std::string text;

    bool operator==(const Chunk&) const = default;
};

// Splits by raw scalar count with no sentence snapping: every chunk holds at
// most `chunk_size` Unicode scalar values and concatenating the chunks in
// index order reproduces the source text exactly. Throws EmptyDocumentError
// on empty text, ValidationError on chunk_size < 1 or episode out of range.
std::vector<Chunk> chunk_script(const ScriptDocument& doc, std::size_t chunk_size);

// Parses "<drama_id>_e<episode>.txt". Throws ValidationError when the name
// does not follow the convention or the episode is outside [1, 4].
ScriptDocument parse_script_filename(const std::filesystem::path& path);

}  // namespace crs
