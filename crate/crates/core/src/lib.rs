pub mod algcore;
pub mod conjcheck;
pub mod exactlin;
pub mod modhom;
pub mod par;
