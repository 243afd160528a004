#include "crs/ingest/triplet_extractor.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "crs/errors.hpp"
#include "crs/text.hpp"

namespace crs {

TripletExtraction TripletExtractor::parse_response(const std::string& response,
                                                   std::size_t chunk_index) const {
    TripletExtraction out;
    std::istringstream lines(response);
    std::string line;
    while (std::getline(lines, line)) {
        const std::string stripped = text::trim(line);
        if (stripped.empty()) continue;

        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (fields.size() < 3) {
            const std::size_t next = stripped.find(delimiter_, pos);
            if (next == std::string::npos) {
                fields.push_back(text::trim(stripped.substr(pos)));
                break;
            }
            fields.push_back(text::trim(stripped.substr(pos, next - pos)));
            pos = next + delimiter_.size();
        }
        const bool well_formed = fields.size() == 3 && !fields[0].empty() &&
                                 !fields[1].empty() && !fields[2].empty();
        if (!well_formed) {
            ++out.dropped_lines;
            continue;
        }
        out.triplets.push_back(
            SpoTriplet{fields[0], fields[1], fields[2], chunk_index});
    }
    return out;
}

TripletExtraction TripletExtractor::extract(const Chunk& chunk, LlmBackend& backend) const {
    const std::string prompt = prompt_.render({{"chunk", chunk.text}});
    std::string response;
    try {
        response = backend.complete(prompt).text;
    } catch (const AuthError&) {
        throw;
    } catch (const BackendError& e) {
        throw BackendError(e.what(), chunk.index);
    }
    return parse_response(response, chunk.index);
}

TripletExtraction TripletExtractor::extract_all(const std::vector<Chunk>& chunks,
                                                LlmBackend& backend,
                                                unsigned parallelism) const {
    if (parallelism == 0) parallelism = 1;
    std::vector<TripletExtraction> per_chunk(chunks.size());
    std::vector<std::exception_ptr> failures(chunks.size());
    std::atomic<std::size_t> cursor{0};

    const auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= chunks.size()) return;
            try {
                per_chunk[i] = extract(chunks[i], backend);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::size_t>(parallelism, chunks.size()));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }

    TripletExtraction merged;
    for (auto& part : per_chunk) {
        merged.dropped_lines += part.dropped_lines;
        for (auto& t : part.triplets) merged.triplets.push_back(std::move(t));
    }
    return merged;
}

}  // namespace crs
