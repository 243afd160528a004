#include "crs/ingest/chunker.hpp"

#include <charconv>

#include "crs/errors.hpp"
#include "crs/text.hpp"

namespace crs {

std::vector<Chunk> chunk_script(const ScriptDocument& doc, std::size_t chunk_size) {
    if (chunk_size < 1) throw ValidationError("chunk_size must be >= 1");
    if (doc.episode < 1 || doc.episode > 4) {
        throw ValidationError("episode must be within [1, 4], got " + std::to_string(doc.episode));
    }
    if (doc.text.empty()) {
        throw EmptyDocumentError("script text is empty (" + doc.drama_id + " episode " +
                                 std::to_string(doc.episode) + ")");
    }
    std::vector<Chunk> chunks;
    std::size_t index = 0;
    for (auto& piece : text::split_scalars(doc.text, chunk_size)) {
        chunks.push_back(Chunk{index++, std::move(piece)});
    }
    return chunks;
}

ScriptDocument parse_script_filename(const std::filesystem::path& path) {
    const std::string stem = path.stem().string();
    const std::size_t sep = stem.rfind("_e");
    if (sep == std::string::npos || sep == 0 || sep + 2 >= stem.size()) {
        throw ValidationError("script file name must follow <drama_id>_e<episode>.txt: " +
                              path.filename().string());
    }
    int episode = 0;
    const char* first = stem.data() + sep + 2;
    const char* last = stem.data() + stem.size();
    const auto [ptr, ec] = std::from_chars(first, last, episode);
    if (ec != std::errc{} || ptr != last) {
        throw ValidationError("script file name has a non-numeric episode: " +
                              path.filename().string());
    }
    if (episode < 1 || episode > 4) {
        throw ValidationError("episode must be within [1, 4]: " + path.filename().string());
    }
    ScriptDocument doc;
    doc.drama_id = stem.substr(0, sep);
    doc.episode = episode;
    return doc;
}

}  // namespace crs
