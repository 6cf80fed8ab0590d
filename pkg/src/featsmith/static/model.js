// Wizard state for the search -> fill -> snippet flow.
//
// The model owns all decisions the views merely display: which holes face
// the user, what counts as an accept vs an override, and the guarantee that
// every submitted hole produces exactly one interaction-log entry.  The
// skeleton text itself is never touched client-side; the final snippet is
// whatever the server returns, byte for byte.
import { ApiError, } from "./api.js";
export function initialState() {
    return {
        stage: "search",
        query: "",
        features: [],
        searchError: null,
        entry: null,
        holes: [],
        context: [],
        snippet: null,
        fillError: null,
    };
}
// Scalar parameters (colors, indices, names) are the user's decisions and
// always face them; object-typed holes with a viable candidate are plumbing
// the synthesizer created on its own.
const SCALAR_TYPES = new Set([
    "boolean", "byte", "short", "int", "long", "float", "double", "char", "String",
]);
export function holeModels(holes) {
    return holes.map((h) => {
        const ranked = (h.recommendations ?? []).map((r) => r.text);
        const top = ranked[0] ?? "";
        const autoAccepted = h.kind === "HOLE" &&
            top.length > 0 &&
            h.expected_type !== null &&
            !SCALAR_TYPES.has(h.expected_type);
        return {
            id: h.id,
            kind: h.kind,
            expectedType: h.expected_type,
            recommendations: ranked,
            chosen: h.kind === "BODY" ? "" : top,
            chosenRank: top ? 1 : null,
            autoAccepted,
            error: null,
        };
    });
}
export function userFacingHoles(holes) {
    return holes.filter((h) => h.kind === "HOLE" && !h.autoAccepted);
}
export function acceptRecommendation(hole, rank) {
    const text = hole.recommendations[rank - 1];
    if (text === undefined) {
        return hole;
    }
    return { ...hole, chosen: text, chosenRank: rank, error: null };
}
export function overrideWithText(hole, text) {
    const rank = hole.recommendations.indexOf(text);
    return {
        ...hole,
        chosen: text,
        chosenRank: rank >= 0 ? rank + 1 : null, // typed text may still match a rec
        error: null,
    };
}
export function readyToSubmit(holes) {
    return holes
        .filter((h) => h.kind === "HOLE")
        .every((h) => h.chosen.trim().length > 0);
}
export class AppFlow {
    constructor(client, session = "ui") {
        this.client = client;
        this.session = session;
        this.state = initialState();
    }
    async search(query) {
        this.state = { ...this.state, query, stage: "search" };
        try {
            const features = await this.client.searchFeatures(query);
            this.state = { ...this.state, features, searchError: null };
        }
        catch (err) {
            this.state = {
                ...this.state,
                features: [],
                searchError: err instanceof Error ? err.message : String(err),
            };
        }
        return this.state;
    }
    async select(entryId, context) {
        const entry = await this.client.getEntry(entryId);
        let holes;
        try {
            holes = holeModels(await this.client.recommend(entryId, context));
        }
        catch {
            // recommendation failure degrades to manual entry, never a dead end
            holes = entry.holes.map((h) => ({
                id: h.id,
                kind: h.kind,
                expectedType: h.expected_type,
                recommendations: [],
                chosen: "",
                chosenRank: null,
                autoAccepted: false,
                error: null,
            }));
        }
        this.state = {
            ...this.state,
            stage: "fill",
            entry,
            holes,
            context,
            snippet: null,
            fillError: null,
        };
        return this.state;
    }
    setHole(holeId, update) {
        this.state = {
            ...this.state,
            holes: this.state.holes.map((h) => (h.id === holeId ? update(h) : h)),
        };
        return this.state;
    }
    /** Submit fills; on success logs exactly one event per expression hole. */
    async submit() {
        const entry = this.state.entry;
        if (!entry) {
            throw new Error("no entry selected");
        }
        const fills = {};
        for (const h of this.state.holes) {
            if (h.kind === "HOLE") {
                fills[h.id] = h.chosen;
            }
            else if (h.chosen.trim()) {
                fills[h.id] = h.chosen;
            }
        }
        try {
            const snippet = await this.client.fill(entry.id, this.state.context, fills);
            for (const h of this.state.holes) {
                if (h.kind !== "HOLE") {
                    continue;
                }
                await this.client.logInteraction(entry.id, h.id, h.chosenRank, this.session);
            }
            this.state = { ...this.state, stage: "snippet", snippet, fillError: null };
        }
        catch (err) {
            if (err instanceof ApiError && err.detail.hole) {
                const hole = err.detail.hole;
                this.state = {
                    ...this.state,
                    fillError: err.detail.message,
                    holes: this.state.holes.map((h) => h.id === hole ? { ...h, error: err.detail.message } : h),
                };
            }
            else {
                this.state = {
                    ...this.state,
                    fillError: err instanceof Error ? err.message : String(err),
                };
            }
        }
        return this.state;
    }
    backToSearch() {
        this.state = {
            ...this.state,
            stage: "search",
            entry: null,
            holes: [],
            snippet: null,
            fillError: null,
        };
        return this.state;
    }
}
