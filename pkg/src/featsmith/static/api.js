// Typed client for the catalog service. The UI talks to the server through
// this module only; `fetchImpl` is injectable so tests can fake transport.
export class ApiError extends Error {
    constructor(status, detail) {
        super(detail.message);
        this.status = status;
        this.detail = detail;
    }
}
export class ApiClient {
    constructor(baseUrl = "", fetchImpl = (...args) => fetch(...args)) {
        this.baseUrl = baseUrl;
        this.fetchImpl = fetchImpl;
    }
    async request(path, init) {
        const res = await this.fetchImpl(this.baseUrl + path, init);
        const body = await res.json();
        if (!res.ok) {
            const detail = body?.error ?? {
                code: "http_error",
                message: `request failed with status ${res.status}`,
            };
            throw new ApiError(res.status, detail);
        }
        return body;
    }
    post(path, payload) {
        return this.request(path, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(payload),
        });
    }
    async searchFeatures(query) {
        const q = encodeURIComponent(query);
        const body = await this.request(`/api/features?q=${q}`);
        return body.features;
    }
    getEntry(id) {
        return this.request(`/api/features/${encodeURIComponent(id)}`);
    }
    async recommend(id, context) {
        const body = await this.post(`/api/features/${encodeURIComponent(id)}/recommend`, { context });
        return body.holes;
    }
    async fill(id, context, fills) {
        const body = await this.post(`/api/features/${encodeURIComponent(id)}/fill`, { context, fills });
        return body.snippet;
    }
    logInteraction(entryId, holeId, acceptedRank, session = "ui") {
        return this.post(`/api/log`, {
            session,
            entry_id: entryId,
            hole_id: holeId,
            accepted_rank: acceptedRank,
        });
    }
}
