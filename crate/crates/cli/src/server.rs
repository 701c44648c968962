//! In-memory HTTP/JSON game service.
//!
//! - `POST   /games`            create a game from a grid or a bipartite document
//! - `GET    /games/{id}`       current state
//! - `POST   /games/{id}/moves` play a move; the engine replies when it is its turn
//! - `GET    /games/{id}/hint`  engine recommendation for the side to move
//! - `POST   /games/{id}/undo`  take back the last human move
//! - `DELETE /games/{id}`       drop the game

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Duration;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use paintbucket::bipartite::contract_with_groups;
use paintbucket::doc::{GraphDocument, VertexEntry};
use paintbucket::{BipartitePosition, Color, GridPosition, Move, SolveOptions, Solver, VertexId};
use serde::{Deserialize, Serialize};
use tokio::sync::{Mutex, RwLock};
use uuid::Uuid;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError { status, message: message.into() }
    }

    fn malformed(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }

    fn not_found() -> Self {
        Self::new(StatusCode::NOT_FOUND, "unknown game")
    }

    fn conflict(message: impl Into<String>) -> Self {
        Self::new(StatusCode::CONFLICT, message)
    }

    fn invalid(message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(serde_json::json!({ "error": self.message }))).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateGame {
    grid: Option<String>,
    position: Option<GraphDocument>,
    /// Side played by the engine; absent for two human players.
    engine: Option<Color>,
    first: Option<Color>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveRequest {
    target: VertexId,
    player: Option<Color>,
}

#[derive(Clone)]
struct Ply {
    mv: Move,
    by_engine: bool,
    prior: BipartitePosition,
    prior_members: Option<BTreeMap<VertexId, Vec<VertexId>>>,
}

struct GridInfo {
    rows: usize,
    cols: usize,
    /// Pixels owned by each vertex of the current position.
    members: BTreeMap<VertexId, Vec<VertexId>>,
}

struct Session {
    id: Uuid,
    initial: BipartitePosition,
    first: Color,
    current: BipartitePosition,
    to_move: Color,
    engine: Option<Color>,
    history: Vec<Ply>,
    grid: Option<GridInfo>,
    revision: u64,
}

#[derive(Serialize)]
struct PlyView {
    player: Color,
    target: VertexId,
    engine: bool,
}

#[derive(Serialize)]
struct GridView {
    rows: usize,
    cols: usize,
    board: String,
    groups: BTreeMap<VertexId, Vec<[usize; 2]>>,
}

#[derive(Serialize)]
struct GameState {
    id: Uuid,
    revision: u64,
    to_move: Option<Color>,
    first: Color,
    engine: Option<Color>,
    terminal: bool,
    winner: Option<Color>,
    vertices: Vec<VertexEntry>,
    edges: Vec<[VertexId; 2]>,
    legal_moves: Vec<VertexId>,
    history: Vec<PlyView>,
    grid: Option<GridView>,
}

#[derive(Serialize)]
struct Hint {
    revision: u64,
    #[serde(rename = "move")]
    mv: Move,
    winning: bool,
}

impl Session {
    fn state(&self) -> GameState {
        let terminal = self.current.is_terminal();
        let doc = self.current.to_document();
        GameState {
            id: self.id,
            revision: self.revision,
            to_move: (!terminal).then_some(self.to_move),
            first: self.first,
            engine: self.engine,
            terminal,
            winner: self.current.winner().ok(),
            vertices: doc.vertices,
            edges: doc.edges,
            legal_moves: self.current.legal_moves(self.to_move).into_iter().map(|m| m.target).collect(),
            history: self.history.iter().map(|p| PlyView { player: p.mv.player, target: p.mv.target, engine: p.by_engine }).collect(),
            grid: self.grid.as_ref().map(|g| self.grid_view(g)),
        }
    }

    fn grid_view(&self, g: &GridInfo) -> GridView {
        let mut board = vec![Color::White; g.rows * g.cols];
        let mut groups = BTreeMap::new();
        for (&v, pixels) in &g.members {
            let color = self.current.color(v).expect("members track live vertices");
            let mut cells = Vec::with_capacity(pixels.len());
            for p in pixels {
                let i = p.0 as usize;
                board[i] = color;
                cells.push([i / g.cols, i % g.cols]);
            }
            groups.insert(v, cells);
        }
        let board = GridPosition::new(g.rows, g.cols, board).expect("dimensions are fixed").to_text();
        GridView { rows: g.rows, cols: g.cols, board, groups }
    }

    fn apply(&mut self, mv: Move, by_engine: bool) -> ApiResult<()> {
        let merged = self.current.neighbors(mv.target);
        let next = self.current.apply_move(mv).map_err(|e| ApiError::conflict(e.to_string()))?;
        let prior_members = self.grid.as_ref().map(|g| g.members.clone());
        if let Some(g) = self.grid.as_mut() {
            let mut absorbed: Vec<VertexId> = merged.iter().flat_map(|n| g.members.remove(n).unwrap_or_default()).collect();
            let owned = g.members.get_mut(&mv.target).expect("target is live");
            owned.append(&mut absorbed);
            owned.sort_unstable();
        }
        let prior = std::mem::replace(&mut self.current, next);
        self.history.push(Ply { mv, by_engine, prior, prior_members });
        self.to_move = self.to_move.opposite();
        debug_assert!(self.replays_cleanly());
        Ok(())
    }

    fn pop(&mut self) -> Option<Ply> {
        let ply = self.history.pop()?;
        self.current = ply.prior.clone();
        if let (Some(g), Some(m)) = (self.grid.as_mut(), ply.prior_members.clone()) {
            g.members = m;
        }
        self.to_move = self.to_move.opposite();
        debug_assert!(self.replays_cleanly());
        Some(ply)
    }

    fn replays_cleanly(&self) -> bool {
        let moves: Vec<Move> = self.history.iter().map(|p| p.mv).collect();
        self.initial.replay(&moves).as_ref() == Ok(&self.current)
    }

    fn engine_to_move(&self) -> bool {
        !self.current.is_terminal() && self.engine == Some(self.to_move)
    }
}

pub struct AppState {
    sessions: RwLock<HashMap<Uuid, Arc<Mutex<Session>>>>,
    solver: Arc<Solver>,
}

impl AppState {
    pub fn new(opts: SolveOptions) -> Self {
        AppState { sessions: RwLock::new(HashMap::new()), solver: Arc::new(Solver::new(opts)) }
    }
}

impl Default for AppState {
    fn default() -> Self {
        AppState::new(SolveOptions { time_limit: Some(Duration::from_secs(10)), ..Default::default() })
    }
}

pub fn router() -> Router {
    router_with(AppState::default())
}

pub fn router_with(state: AppState) -> Router {
    Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game).delete(delete_game))
        .route("/games/{id}/moves", post(post_move))
        .route("/games/{id}/hint", get(get_hint))
        .route("/games/{id}/undo", post(undo))
        .with_state(Arc::new(state))
}

async fn session(state: &AppState, id: &str) -> ApiResult<Arc<Mutex<Session>>> {
    let id = Uuid::parse_str(id).map_err(|_| ApiError::not_found())?;
    state.sessions.read().await.get(&id).cloned().ok_or_else(ApiError::not_found)
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError::malformed(format!("malformed request: {e}")))
}

/// Best move for the side to move, or the smallest legal move if the search
/// gives up.
async fn engine_choice(solver: &Arc<Solver>, pos: &BipartitePosition, to_move: Color) -> (Move, Option<bool>) {
    let solver = Arc::clone(solver);
    let p = pos.clone();
    let found = tokio::task::spawn_blocking(move || solver.best_move(&p, to_move)).await;
    match found {
        Ok(Ok(b)) => (b.mv, Some(b.winning)),
        _ => (pos.legal_moves(to_move)[0], None),
    }
}

async fn engine_reply(state: &AppState, s: &mut Session) -> ApiResult<()> {
    if s.engine_to_move() {
        let (mv, _) = engine_choice(&state.solver, &s.current, s.to_move).await;
        s.apply(mv, true)?;
    }
    Ok(())
}

async fn create_game(State(state): State<Arc<AppState>>, body: Bytes) -> ApiResult<(StatusCode, Json<GameState>)> {
    let req: CreateGame = parse_body(&body)?;
    let (position, grid) = match (req.grid, req.position) {
        (Some(text), None) => {
            let grid = GridPosition::parse(&text).map_err(|e| ApiError::malformed(format!("invalid grid: {e}")))?;
            let (p, members) =
                contract_with_groups(&grid.to_colored_graph()).map_err(|e| ApiError::invalid(e.to_string()))?;
            (p, Some(GridInfo { rows: grid.rows(), cols: grid.cols(), members }))
        }
        (None, Some(doc)) => {
            let p = BipartitePosition::from_document(&doc).map_err(|e| ApiError::invalid(e.to_string()))?;
            (p, None)
        }
        _ => return Err(ApiError::malformed("exactly one of `grid` and `position` is required")),
    };
    if position.vertex_count() > MAX_VERTICES {
        return Err(ApiError::invalid(format!(
            "position has {} vertices; sessions are limited to {MAX_VERTICES}",
            position.vertex_count()
        )));
    }
    let first = req.first.unwrap_or(Color::Black);
    let id = Uuid::new_v4();
    let mut s = Session {
        id,
        initial: position.clone(),
        first,
        current: position,
        to_move: first,
        engine: req.engine,
        history: Vec::new(),
        grid,
        revision: 1,
    };
    engine_reply(&state, &mut s).await?;
    let view = s.state();
    state.sessions.write().await.insert(id, Arc::new(Mutex::new(s)));
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_game(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Json<GameState>> {
    let s = session(&state, &id).await?;
    let s = s.lock().await;
    Ok(Json(s.state()))
}

async fn delete_game(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<StatusCode> {
    let uuid = Uuid::parse_str(&id).map_err(|_| ApiError::not_found())?;
    match state.sessions.write().await.remove(&uuid) {
        Some(_) => Ok(StatusCode::NO_CONTENT),
        None => Err(ApiError::not_found()),
    }
}

async fn post_move(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Json<GameState>> {
    let req: MoveRequest = parse_body(&body)?;
    let s = session(&state, &id).await?;
    let mut s = s.lock().await;
    if s.current.is_terminal() {
        return Err(ApiError::conflict("the game is over"));
    }
    if s.engine == Some(s.to_move) {
        return Err(ApiError::conflict(format!("it is the engine's turn ({})", s.to_move)));
    }
    if let Some(player) = req.player {
        if player != s.to_move {
            return Err(ApiError::conflict(format!("out of turn: {} is to move", s.to_move)));
        }
    }
    let mv = Move::new(s.to_move, req.target);
    s.apply(mv, false)?;
    engine_reply(&state, &mut s).await?;
    s.revision += 1;
    Ok(Json(s.state()))
}

async fn get_hint(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Json<Hint>> {
    let s = session(&state, &id).await?;
    let s = s.lock().await;
    if s.current.is_terminal() {
        return Err(ApiError::conflict("the game is over"));
    }
    match engine_choice(&state.solver, &s.current, s.to_move).await {
        (mv, Some(winning)) => Ok(Json(Hint { revision: s.revision, mv, winning })),
        (_, None) => Err(ApiError::new(StatusCode::SERVICE_UNAVAILABLE, "search limit reached")),
    }
}

async fn undo(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Json<GameState>> {
    let s = session(&state, &id).await?;
    let mut s = s.lock().await;
    if !s.history.iter().any(|p| !p.by_engine) {
        return Err(ApiError::conflict("nothing to undo"));
    }
    // against the engine this removes its reply and the human move before it
    while let Some(ply) = s.pop() {
        if !ply.by_engine {
            break;
        }
    }
    s.revision += 1;
    Ok(Json(s.state()))
}
